#include "gridfloer/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace gf {

namespace {

// Half-open cyclic membership: x in [a, b) on Z/m.
bool chalf(int m, int a, int x, int b) {
  return ((x - a + m) % m) < ((b - a + m) % m);
}

}  // namespace

int southwest_count(const std::vector<std::pair<int, int>>& A,
                    const std::vector<std::pair<int, int>>& B) {
  int c = 0;
  for (const auto& a : A)
    for (const auto& b : B)
      if (a.first < b.first && a.second < b.second) ++c;
  return c;
}

int m_grading(const std::vector<std::pair<int, int>>& dots,
              const std::vector<std::pair<int, int>>& markers) {
  return southwest_count(dots, dots) - southwest_count(dots, markers) -
         southwest_count(markers, dots) + southwest_count(markers, markers) + 1;
}

std::pair<int, int> gradings(const GridDiagram& g, const ResolutionVector& I, const Perm& matching) {
  GridDiagram r = resolve(g, I);
  std::vector<std::pair<int, int>> dots, os, xs;
  for (int c = 0; c < r.cols; ++c) dots.push_back({2 * c, 2 * matching[c]});
  for (const auto& d : r.decorations)
    (d.kind == Kind::O ? os : xs).push_back({2 * d.col + 1, 2 * d.row + 1});
  int m_o = m_grading(dots, os);
  int m_x = m_grading(dots, xs);
  int zeros = 0;
  for (uint8_t b : I) zeros += b == 0;
  int n = r.cols;
  int ell = components(g);
  return {m_o + zeros, m_o - m_x - (n - ell)};
}

PeakConvention PeakConvention::from_grid(const GridDiagram& g) {
  PeakConvention pc;
  for (const auto& s : g.singular) pc.flags.push_back(s.orient);
  return pc;
}

GridContext::GridContext(GridDiagram grid, PeakConvention convention)
    : grid_(std::move(grid)), convention_(std::move(convention)) {
  n_ = grid_.resolved_size();
  k_ = grid_.k();
  if (n_ > kMaxGridSize) throw Error("grid too large: resolved size " + std::to_string(n_));
  if (static_cast<int>(convention_.flags.size()) != k_)
    throw Error("peak convention length mismatch");
  ell_ = components(grid_);

  readings_.resize(static_cast<size_t>(1) << k_);
  for (uint32_t mask = 0; mask < readings_.size(); ++mask) {
    Reading& rd = readings_[mask];
    ResolveTrace trace = resolve_traced(grid_, vector_of(mask));
    rd.grid = trace.grid;
    rd.images = trace.image;
    for (const auto& d : rd.grid.decorations) {
      if (d.kind == Kind::O)
        rd.o_row[static_cast<size_t>(d.col)] = d.row;
      else
        rd.x_row[static_cast<size_t>(d.col)] = d.row;
    }

    for (int i = 0; i < k_; ++i) {
      const SingularElement& se = grid_.singular[static_cast<size_t>(i)];
      ElementView ev{};
      bool is_col = se.axis == Axis::Column;
      ev.line = (is_col ? trace.col_base[static_cast<size_t>(se.index)]
                        : trace.row_base[static_cast<size_t>(se.index)]) +
                1;
      // The element's decorations in position order along the line, with
      // their resolved images (trace.image is parallel to decorations).
      struct Entry {
        int order;       // unresolved position along the line
        int idx;         // unresolved decoration index
        Decoration img;  // resolved image
      };
      std::vector<Entry> entries;
      for (size_t j = 0; j < grid_.decorations.size(); ++j) {
        const Decoration& d = grid_.decorations[j];
        if (is_col ? d.col == se.index : d.row == se.index)
          entries.push_back({is_col ? d.row : d.col, static_cast<int>(j), trace.image[j]});
      }
      std::sort(entries.begin(), entries.end(),
                [](const Entry& a, const Entry& b) { return a.order < b.order; });

      for (int j = 0; j < 4; ++j) {
        const Decoration& img = entries[static_cast<size_t>(j)].img;
        auto& dd = ev.deco[j];
        dd.idx = entries[static_cast<size_t>(j)].idx;
        dd.kind = img.kind;
        dd.center_key = 4 * (is_col ? img.row : img.col) + 2;
        dd.cell_here = is_col ? img.col : img.row;
        dd.cell_there = 2 * ev.line - 1 - dd.cell_here;
      }
      // The distinguished intersection lies in the unique gap whose flanking
      // kinds are (O then X) for PLUS, (X then O) for MINUS, reading bottom
      // to top (columns) or left to right (rows), cyclically.
      Kind lo_kind = convention_.flags[static_cast<size_t>(i)] == Orient::Plus ? Kind::O : Kind::X;
      int found = -1;
      for (int j = 0; j < 4; ++j) {
        Kind a = ev.deco[j].kind;
        Kind b = ev.deco[(j + 1) % 4].kind;
        if (a == lo_kind && b == other_kind(lo_kind)) {
          if (found >= 0) throw Error("internal: ambiguous peak gap");
          found = j;
        }
      }
      if (found < 0) throw Error("internal: no peak gap");
      // Pin the intersection just past the gap's low decoration. "Past" is
      // measured from the decoration's full unresolved span: a decoration
      // shared with a crossed element moves within that span as the other
      // element's bit flips, and the intersection must not move with it or
      // composite decompositions stop matching across readings.
      const Decoration& lo = grid_.decorations[static_cast<size_t>(ev.deco[found].idx)];
      int hi_cell;
      if (is_col)
        hi_cell = trace.row_base[static_cast<size_t>(lo.row)] +
                  (grid_.is_singular_row(lo.row) ? 1 : 0);
      else
        hi_cell = trace.col_base[static_cast<size_t>(lo.col)] +
                  (grid_.is_singular_col(lo.col) ? 1 : 0);
      ev.cross_key = 4 * hi_cell + 3;
      rd.elements.push_back(ev);
    }
  }
}

uint32_t GridContext::mask_of(const ResolutionVector& I) const {
  if (static_cast<int>(I.size()) != k_) throw Error("resolution vector length mismatch");
  uint32_t m = 0;
  for (int i = 0; i < k_; ++i)
    if (I[static_cast<size_t>(i)]) m |= 1u << i;
  return m;
}

ResolutionVector GridContext::vector_of(uint32_t mask) const {
  ResolutionVector I(static_cast<size_t>(k_), 0);
  for (int i = 0; i < k_; ++i)
    if (mask & (1u << i)) I[static_cast<size_t>(i)] = 1;
  return I;
}

const GridDiagram& GridContext::resolved(uint32_t mask) const { return readings_[mask].grid; }

std::pair<int, int> GridContext::gradings_of(uint32_t mask, const Perm& matching) const {
  return gradings(grid_, vector_of(mask), matching);
}

void GridContext::polygons_raw(uint32_t mask, const Perm& matching, Policy policy,
                               const std::function<void(const RawPolygon&)>& sink) const {
  const Reading& rd = readings_[mask];
  const int n = n_;
  const int q = 4 * n;

  struct Avail {
    int element;
    Edge edge;
    int cross;
    const ElementView* view;
  };

  for (int W = 0; W < n; ++W) {
    const int S = matching[W];
    for (int E = 0; E < n; ++E) {
      if (E == W) continue;
      const int N = matching[E];

      bool empty = true;
      for (int t = 0; t < n && empty; ++t)
        if (cyclic_between(n, W, t, E) && cyclic_between(n, S, matching[t], N)) empty = false;
      if (!empty) continue;

      int o_rect = 0, x_rect = 0;
      for (int cc = W; cc != E; cc = (cc + 1) % n) {
        if (chalf(n, S, rd.o_row[static_cast<size_t>(cc)], N)) ++o_rect;
        if (chalf(n, S, rd.x_row[static_cast<size_t>(cc)], N)) ++x_rect;
      }
      const bool torn = W == 0 || (W > E && E != 0);

      Avail avail[4];
      int na = 0;
      for (int i = 0; i < k_; ++i) {
        if (mask & (1u << i)) continue;
        const ElementView& ev = rd.elements[static_cast<size_t>(i)];
        if (grid_.singular[static_cast<size_t>(i)].axis == Axis::Column) {
          if (ev.line != W && ev.line != E) continue;
          if (!cyclic_between(q, 4 * S, ev.cross_key, 4 * N)) continue;
          avail[na++] = {i, ev.line == W ? Edge::West : Edge::East, ev.cross_key, &ev};
        } else {
          if (ev.line != S && ev.line != N) continue;
          if (!cyclic_between(q, 4 * W, ev.cross_key, 4 * E)) continue;
          avail[na++] = {i, ev.line == N ? Edge::North : Edge::South, ev.cross_key, &ev};
        }
      }

      for (int ss = 0; ss < (1 << na); ++ss) {
        int o_in = o_rect, x_in = x_rect;
        uint32_t peak_mask = 0;
        uint8_t mu = 0;
        // Decorations between a consumed crossing and its edge's
        // target-corner are read at the flipped resolution. A decoration
        // shared by a peaked column and a peaked row flips in both axes, so
        // collect effective coordinates first, deduplicated, then compare
        // memberships.
        struct Touch {
          int idx, col, row;
          Kind kind;
        };
        Touch touched[16];
        int nt = 0;
        auto touch = [&](int idx) -> Touch& {
          for (int u = 0; u < nt; ++u)
            if (touched[u].idx == idx) return touched[u];
          const Decoration& img = rd.images[static_cast<size_t>(idx)];
          touched[nt] = {idx, img.col, img.row, img.kind};
          return touched[nt++];
        };
        const Avail* sel[4] = {nullptr, nullptr, nullptr, nullptr};  // per Edge
        for (int p = 0; p < na; ++p) {
          if (!(ss & (1 << p))) continue;
          const Avail& av = avail[p];
          peak_mask |= 1u << av.element;
          sel[static_cast<int>(av.edge)] = &av;
          if (av.edge == Edge::East || av.edge == Edge::North) ++mu;
          int lo, hi;
          switch (av.edge) {
            case Edge::West:  lo = av.cross; hi = 4 * N; break;
            case Edge::East:  lo = 4 * S; hi = av.cross; break;
            case Edge::North: lo = 4 * W; hi = av.cross; break;
            default:          lo = av.cross; hi = 4 * E; break;
          }
          bool is_col = grid_.singular[static_cast<size_t>(av.element)].axis == Axis::Column;
          for (const auto& dd : av.view->deco) {
            if (!cyclic_between(q, lo, dd.center_key, hi)) continue;
            (is_col ? touch(dd.idx).col : touch(dd.idx).row) = dd.cell_there;
          }
        }
        // Two peaked edges meeting at a target-corner (east+south or
        // west+north) push that corner to the crossing of the two flipped
        // middle lines; the decoration shared by the two elements, if any,
        // is then read at the flipped resolution in both axes.
        for (auto [ce, re] : {std::pair{Edge::East, Edge::South}, {Edge::West, Edge::North}}) {
          const Avail* cp = sel[static_cast<int>(ce)];
          const Avail* rp = sel[static_cast<int>(re)];
          if (!cp || !rp) continue;
          for (const auto& cd : cp->view->deco)
            for (const auto& rdn : rp->view->deco)
              if (cd.idx == rdn.idx) {
                Touch& t = touch(cd.idx);
                t.col = cd.cell_there;
                t.row = rdn.cell_there;
              }
        }
        for (int u = 0; u < nt; ++u) {
          const Decoration& img = rd.images[static_cast<size_t>(touched[u].idx)];
          bool before = chalf(n, W, img.col, E) && chalf(n, S, img.row, N);
          bool after = chalf(n, W, touched[u].col, E) && chalf(n, S, touched[u].row, N);
          (touched[u].kind == Kind::O ? o_in : x_in) += static_cast<int>(after) - before;
        }
        if (policy == Policy::AvoidAll && (o_in || x_in)) continue;
        if (policy == Policy::AvoidOOnly && o_in) continue;
        sink(RawPolygon{W, E, peak_mask, mu, static_cast<uint8_t>(o_in),
                        static_cast<uint8_t>(x_in), torn});
      }
    }
  }
}

std::vector<GridPolygon> GridContext::polygons_from(const Generator& source, Policy policy) const {
  uint32_t mask = mask_of(source.resolution);
  const Reading& rd = readings_[mask];
  std::vector<GridPolygon> out;
  polygons_raw(mask, source.matching, policy, [&](const RawPolygon& rp) {
    GridPolygon poly;
    poly.source = source;
    poly.west = rp.west;
    poly.east = rp.east;
    poly.o_inside = rp.o_inside;
    poly.x_inside = rp.x_inside;
    poly.torn = rp.torn;

    uint32_t tmask = mask | rp.peak_mask;
    Perm ty = source.matching;
    ty.swap_positions(rp.west, rp.east);
    poly.target.resolution = vector_of(tmask);
    poly.target.matching = ty;
    auto [mt, a2] = gradings_of(tmask, ty);
    poly.target.maslov_total = mt;
    poly.target.alexander2 = a2;

    const int S = source.matching[rp.west];
    const int N = source.matching[rp.east];
    int cross_on[4] = {-1, -1, -1, -1};  // per Edge
    for (int i = 0; i < k_; ++i) {
      if (!(rp.peak_mask & (1u << i))) continue;
      const ElementView& ev = rd.elements[static_cast<size_t>(i)];
      Edge e;
      if (grid_.singular[static_cast<size_t>(i)].axis == Axis::Column)
        e = ev.line == rp.west ? Edge::West : Edge::East;
      else
        e = ev.line == N ? Edge::North : Edge::South;
      cross_on[static_cast<int>(e)] = ev.cross_key;
      poly.peaks.push_back({i, e, convention_.flags[static_cast<size_t>(i)]});
    }
    auto corner = [&](int cx, int cy) { poly.corners.push_back({cx, cy}); };
    corner(4 * rp.west, 4 * S);
    if (cross_on[0] >= 0) corner(4 * rp.west, cross_on[0]);
    corner(4 * rp.west, 4 * N);
    if (cross_on[1] >= 0) corner(cross_on[1], 4 * N);
    corner(4 * rp.east, 4 * N);
    if (cross_on[2] >= 0) corner(4 * rp.east, cross_on[2]);
    corner(4 * rp.east, 4 * S);
    if (cross_on[3] >= 0) corner(cross_on[3], 4 * S);
    out.push_back(std::move(poly));
  });
  return out;
}

std::vector<GridPolygon> enumerate_polygons(const GridDiagram& g, const Generator& source,
                                            const PeakConvention& convention, Policy policy) {
  GridContext ctx(g, convention);
  return ctx.polygons_from(source, policy);
}

GridPolygon fill_spikes(const GridContext& ctx, const GridPolygon& poly) {
  if (poly.peaks.empty()) throw Error("fill_spikes requires at least one peak");
  GridPolygon rect;
  rect.source = poly.source;
  rect.west = poly.west;
  rect.east = poly.east;
  rect.torn = poly.torn;
  rect.target.resolution = poly.source.resolution;
  rect.target.matching = poly.target.matching;
  auto [mt, a2] = gradings(ctx.grid(), rect.target.resolution, rect.target.matching);
  rect.target.maslov_total = mt;
  rect.target.alexander2 = a2;

  uint32_t mask = ctx.mask_of(poly.source.resolution);
  const GridDiagram& rg = ctx.resolved(mask);
  const int n = ctx.n();
  const int S = poly.source.matching[poly.west];
  const int N = poly.source.matching[poly.east];
  for (const auto& d : rg.decorations) {
    if (!chalf(n, poly.west, d.col, poly.east)) continue;
    if (!chalf(n, S, d.row, N)) continue;
    (d.kind == Kind::O ? rect.o_inside : rect.x_inside)++;
  }
  rect.corners = {{4 * poly.west, 4 * S},
                  {4 * poly.west, 4 * N},
                  {4 * poly.east, 4 * N},
                  {4 * poly.east, 4 * S}};
  return rect;
}

bool is_torn(const GridPolygon& rect) { return rect.torn; }

namespace {

void generators_impl(const GridDiagram& g, const ResolutionVector& I,
                     const std::function<void(const Generator&)>& sink, int cap, bool force) {
  int n = g.resolved_size();
  if (n > kMaxGridSize) throw Error("grid too large: resolved size " + std::to_string(n));
  if (n > cap && !force)
    throw Error("resolved size " + std::to_string(n) + " exceeds the generator cap " +
                std::to_string(cap) + " (use force to override)");
  // Fast incremental grading tables: per lattice point, decorations strictly
  // north-east and strictly south-west of it.
  GridDiagram r = resolve(g, I);
  int ne_o[kMaxGridSize][kMaxGridSize] = {}, sw_o[kMaxGridSize][kMaxGridSize] = {};
  int ne_x[kMaxGridSize][kMaxGridSize] = {}, sw_x[kMaxGridSize][kMaxGridSize] = {};
  int ibb_o = 0, ibb_x = 0;
  {
    std::vector<std::pair<int, int>> os, xs;
    for (const auto& d : r.decorations) (d.kind == Kind::O ? os : xs).push_back({d.col, d.row});
    for (int c = 0; c < n; ++c)
      for (int w = 0; w < n; ++w) {
        for (const auto& p : os) {
          ne_o[c][w] += p.first >= c && p.second >= w;
          sw_o[c][w] += p.first < c && p.second < w;
        }
        for (const auto& p : xs) {
          ne_x[c][w] += p.first >= c && p.second >= w;
          sw_x[c][w] += p.first < c && p.second < w;
        }
      }
    for (const auto& a : os)
      for (const auto& b : os) ibb_o += a.first < b.first && a.second < b.second;
    for (const auto& a : xs)
      for (const auto& b : xs) ibb_x += a.first < b.first && a.second < b.second;
  }
  int zeros = 0;
  for (uint8_t b : I) zeros += b == 0;
  int ell = components(g);

  uint64_t total = factorial(n);
  for (uint64_t rank = 0; rank < total; ++rank) {
    Perm p = perm_unrank(n, rank);
    int iaa = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) iaa += p[i] < p[j];
    int iab_o = 0, iba_o = 0, iab_x = 0, iba_x = 0;
    for (int c = 0; c < n; ++c) {
      iab_o += ne_o[c][p[c]];
      iba_o += sw_o[c][p[c]];
      iab_x += ne_x[c][p[c]];
      iba_x += sw_x[c][p[c]];
    }
    int m_o = iaa - iab_o - iba_o + ibb_o + 1;
    int m_x = iaa - iab_x - iba_x + ibb_x + 1;
    Generator gen;
    gen.resolution = I;
    gen.matching = p;
    gen.maslov_total = m_o + zeros;
    gen.alexander2 = m_o - m_x - (n - ell);
    sink(gen);
  }
}

}  // namespace

void enumerate_generators_streamed(const GridDiagram& g, const ResolutionVector& I,
                                   const std::function<void(const Generator&)>& sink, int cap,
                                   bool force) {
  generators_impl(g, I, sink, cap, force);
}

std::vector<Generator> enumerate_generators(const GridDiagram& g, const ResolutionVector& I,
                                            int cap, bool force) {
  std::vector<Generator> out;
  generators_impl(g, I, [&](const Generator& gen) { out.push_back(gen); }, cap, force);
  return out;
}

}  // namespace gf
