#include "gridfloer/grid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gf {

namespace {

bool deco_less(const Decoration& a, const Decoration& b) {
  if (a.col != b.col) return a.col < b.col;
  if (a.row != b.row) return a.row < b.row;
  return a.kind < b.kind;
}

bool sing_less(const SingularElement& a, const SingularElement& b) {
  if (a.axis != b.axis) return a.axis < b.axis;  // Column before Row
  return a.index < b.index;
}

// Sorts decorations and singular elements into canonical (scan) order.
void finalize(GridDiagram& g) {
  std::sort(g.decorations.begin(), g.decorations.end(), deco_less);
  std::sort(g.singular.begin(), g.singular.end(), sing_less);
}

int count_kind(const std::vector<Decoration>& ds, Kind k) {
  int c = 0;
  for (const auto& d : ds)
    if (d.kind == k) ++c;
  return c;
}

}  // namespace

std::optional<Decoration> GridDiagram::at(int col, int row) const {
  for (const auto& d : decorations)
    if (d.col == col && d.row == row) return d;
  return std::nullopt;
}

std::vector<Decoration> GridDiagram::in_col(int col) const {
  std::vector<Decoration> r;
  for (const auto& d : decorations)
    if (d.col == col) r.push_back(d);
  std::sort(r.begin(), r.end(), [](const Decoration& a, const Decoration& b) { return a.row < b.row; });
  return r;
}

std::vector<Decoration> GridDiagram::in_row(int row) const {
  std::vector<Decoration> r;
  for (const auto& d : decorations)
    if (d.row == row) r.push_back(d);
  std::sort(r.begin(), r.end(), [](const Decoration& a, const Decoration& b) { return a.col < b.col; });
  return r;
}

bool GridDiagram::is_singular_col(int col) const {
  for (const auto& s : singular)
    if (s.axis == Axis::Column && s.index == col) return true;
  return false;
}

bool GridDiagram::is_singular_row(int row) const {
  for (const auto& s : singular)
    if (s.axis == Axis::Row && s.index == row) return true;
  return false;
}

int GridDiagram::singular_cols() const {
  int c = 0;
  for (const auto& s : singular)
    if (s.axis == Axis::Column) ++c;
  return c;
}

int GridDiagram::singular_rows() const {
  int c = 0;
  for (const auto& s : singular)
    if (s.axis == Axis::Row) ++c;
  return c;
}

int GridDiagram::resolved_size() const { return count_kind(decorations, Kind::O); }

std::vector<std::string> validate(const GridDiagram& g) {
  std::vector<std::string> out;
  if (g.cols < 1 || g.rows < 1) {
    out.push_back("empty grid");
    return out;
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& d : g.decorations) {
    if (d.col < 0 || d.col >= g.cols || d.row < 0 || d.row >= g.rows) {
      out.push_back("decoration out of bounds at (" + std::to_string(d.col) + "," + std::to_string(d.row) + ")");
      return out;
    }
    if (!seen.insert({d.col, d.row}).second)
      out.push_back("two decorations share cell (" + std::to_string(d.col) + "," + std::to_string(d.row) + ")");
  }
  for (const auto& s : g.singular) {
    int bound = s.axis == Axis::Column ? g.cols : g.rows;
    if (s.index < 0 || s.index >= bound) {
      out.push_back("singular element index out of bounds");
      return out;
    }
  }
  for (size_t i = 0; i + 1 < g.singular.size(); ++i) {
    if (!sing_less(g.singular[i], g.singular[i + 1]))
      out.push_back("singular elements not in scan order (columns left-to-right, then rows bottom-to-top)");
  }

  // Line contents: one O + one X on regular lines, two of each in an
  // alternating pattern on singular lines (decorations surrounding a third
  // must be of different kinds).
  auto check_line = [&](Axis axis, int idx, const std::vector<Decoration>& ds, bool listed) {
    std::string name = std::string(axis == Axis::Column ? "column " : "row ") + std::to_string(idx);
    int o = count_kind(ds, Kind::O);
    int x = static_cast<int>(ds.size()) - o;
    if (o == 1 && x == 1) {
      if (listed) out.push_back(name + " listed singular but holds one O and one X");
      return;
    }
    if (o == 2 && x == 2) {
      if (!listed) {
        out.push_back(name + " holds two O and two X but is not listed singular");
        return;
      }
      if (ds[0].kind == ds[2].kind || ds[1].kind == ds[3].kind)
        out.push_back(name + ": decorations surrounding a third one are of equal kind");
      return;
    }
    out.push_back(name + " holds " + std::to_string(o) + " O and " + std::to_string(x) + " X");
  };
  for (int c = 0; c < g.cols; ++c) check_line(Axis::Column, c, g.in_col(c), g.is_singular_col(c));
  for (int r = 0; r < g.rows; ++r) check_line(Axis::Row, r, g.in_row(r), g.is_singular_row(r));

  int n_o = count_kind(g.decorations, Kind::O);
  int n_x = static_cast<int>(g.decorations.size()) - n_o;
  if (n_o != n_x) out.push_back("decoration counts differ: " + std::to_string(n_o) + " O vs " + std::to_string(n_x) + " X");
  if (g.cols + g.singular_cols() != n_o)
    out.push_back("column count mismatch: cols + singular columns != #O");
  if (g.rows + g.singular_rows() != n_o)
    out.push_back("row count mismatch: rows + singular rows != #O");
  return out;
}

bool is_valid(const GridDiagram& g) { return validate(g).empty(); }

GridDiagram parse_grid(const std::string& text) {
  std::vector<std::string> matrix;
  std::string orient;
  bool have_orient = false;
  bool seen_grid = false;
  bool in_matrix = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty()) {
      if (in_matrix && !matrix.empty()) in_matrix = false;
      continue;
    }
    if (line[0] == '#') continue;
    if (!seen_grid) {
      if (line == "grid:") {
        seen_grid = true;
        in_matrix = true;
        continue;
      }
      throw Error("line " + std::to_string(lineno) + ": expected 'grid:' before content");
    }
    if (line.rfind("orient:", 0) == 0) {
      if (have_orient) throw Error("line " + std::to_string(lineno) + ": duplicate orient line");
      orient = line.substr(7);
      while (!orient.empty() && orient.front() == ' ') orient.erase(orient.begin());
      have_orient = true;
      in_matrix = false;
      continue;
    }
    bool matrix_line = !line.empty() && line.find_first_not_of("OX.") == std::string::npos;
    if (!in_matrix || !matrix_line)
      throw Error("line " + std::to_string(lineno) + ": unexpected content '" + line + "'");
    matrix.push_back(line);
  }
  if (!seen_grid) throw Error("missing 'grid:' line");
  if (matrix.empty()) throw Error("no grid rows");

  GridDiagram g;
  g.rows = static_cast<int>(matrix.size());
  g.cols = static_cast<int>(matrix[0].size());
  for (int i = 0; i < g.rows; ++i) {
    if (static_cast<int>(matrix[static_cast<size_t>(i)].size()) != g.cols)
      throw Error("grid rows have unequal widths");
    int row = g.rows - 1 - i;
    for (int c = 0; c < g.cols; ++c) {
      char ch = matrix[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (ch == '.') continue;
      g.decorations.push_back({c, row, ch == 'O' ? Kind::O : Kind::X});
    }
  }

  // Singular lines are inferred from the decoration counts, in scan order.
  for (int c = 0; c < g.cols; ++c)
    if (g.in_col(c).size() == 4) g.singular.push_back({Axis::Column, c, Orient::Plus});
  for (int r = 0; r < g.rows; ++r)
    if (g.in_row(r).size() == 4) g.singular.push_back({Axis::Row, r, Orient::Plus});

  if (have_orient) {
    std::vector<Orient> flags;
    for (size_t i = 0; i < orient.size();) {
      if (orient[i] == '+') {
        flags.push_back(Orient::Plus);
        ++i;
      } else if (orient[i] == '-') {
        flags.push_back(Orient::Minus);
        ++i;
      } else if (orient.compare(i, 3, "\xe2\x88\x92") == 0) {  // U+2212
        flags.push_back(Orient::Minus);
        i += 3;
      } else {
        throw Error("orient: invalid character");
      }
    }
    if (flags.size() != g.singular.size())
      throw Error("orient: annotation length " + std::to_string(flags.size()) + " does not match " +
                  std::to_string(g.singular.size()) + " singular elements");
    for (size_t i = 0; i < flags.size(); ++i) g.singular[i].orient = flags[i];
  }

  finalize(g);
  auto report = validate(g);
  if (!report.empty()) {
    std::string msg = "invalid grid:";
    for (const auto& v : report) msg += "\n  " + v;
    throw Error(msg);
  }
  return g;
}

std::string serialize_grid(const GridDiagram& g) {
  std::string out = "grid:\n";
  for (int r = g.rows - 1; r >= 0; --r) {
    std::string line(static_cast<size_t>(g.cols), '.');
    for (const auto& d : g.decorations)
      if (d.row == r) line[static_cast<size_t>(d.col)] = kind_char(d.kind);
    out += line;
    out += '\n';
  }
  if (!g.singular.empty()) {
    out += "orient: ";
    for (const auto& s : g.singular) out += s.orient == Orient::Plus ? '+' : '-';
    out += '\n';
  }
  return out;
}

ResolveTrace resolve_traced(const GridDiagram& g, const ResolutionVector& I) {
  if (static_cast<int>(I.size()) != g.k())
    throw Error("resolution vector length " + std::to_string(I.size()) + " != " + std::to_string(g.k()));

  int n = g.resolved_size();
  ResolveTrace t;
  t.col_base.resize(static_cast<size_t>(g.cols));
  t.row_base.resize(static_cast<size_t>(g.rows));
  int shift = 0;
  for (int c = 0; c < g.cols; ++c) {
    t.col_base[static_cast<size_t>(c)] = c + shift;
    if (g.is_singular_col(c)) ++shift;
  }
  shift = 0;
  for (int r = 0; r < g.rows; ++r) {
    t.row_base[static_cast<size_t>(r)] = r + shift;
    if (g.is_singular_row(r)) ++shift;
  }

  // Placement of the four decorations of a singular line onto its two
  // resolved lines. The strands pair the 2nd with the 4th decoration and the
  // 1st with the 3rd (in position order along the line). With d3, d4 of equal
  // kind the 0-resolution (positive crossing) puts the {2nd,4th} strand on
  // the first resolved line; otherwise on the second. Bit 1 swaps the two.
  auto near_side = [](const std::vector<Decoration>& ds, uint8_t bit, const Decoration& d) {
    int pos = 0;
    for (int i = 0; i < 4; ++i)
      if (ds[static_cast<size_t>(i)] == d) pos = i + 1;
    bool strand24 = (pos == 2 || pos == 4);
    bool same_kind = ds[2].kind == ds[3].kind;
    bool first_line = strand24 == same_kind;
    if (bit) first_line = !first_line;
    return first_line ? 0 : 1;
  };

  auto element_bit = [&](Axis axis, int idx) -> uint8_t {
    for (size_t i = 0; i < g.singular.size(); ++i)
      if (g.singular[i].axis == axis && g.singular[i].index == idx) return I[i];
    throw Error("internal: singular element not found");
  };

  GridDiagram out;
  out.cols = n;
  out.rows = n;
  for (const auto& d : g.decorations) {
    Decoration nd = d;
    if (g.is_singular_col(d.col))
      nd.col = t.col_base[static_cast<size_t>(d.col)] + near_side(g.in_col(d.col), element_bit(Axis::Column, d.col), d);
    else
      nd.col = t.col_base[static_cast<size_t>(d.col)];
    if (g.is_singular_row(d.row))
      nd.row = t.row_base[static_cast<size_t>(d.row)] + near_side(g.in_row(d.row), element_bit(Axis::Row, d.row), d);
    else
      nd.row = t.row_base[static_cast<size_t>(d.row)];
    t.image.push_back(nd);
    out.decorations.push_back(nd);
  }
  finalize(out);
  t.grid = out;
  return t;
}

GridDiagram resolve(const GridDiagram& g, const ResolutionVector& I) { return resolve_traced(g, I).grid; }

int components(const GridDiagram& g) {
  GridDiagram r = g.k() ? resolve(g, ResolutionVector(static_cast<size_t>(g.k()), 0)) : g;
  int n = r.cols;
  std::vector<int> xrow(static_cast<size_t>(n), -1), ocol(static_cast<size_t>(n), -1);
  for (const auto& d : r.decorations) {
    if (d.kind == Kind::X) xrow[static_cast<size_t>(d.col)] = d.row;
    else ocol[static_cast<size_t>(d.row)] = d.col;
  }
  std::vector<bool> used(static_cast<size_t>(n), false);
  int cycles = 0;
  for (int c = 0; c < n; ++c) {
    if (used[static_cast<size_t>(c)]) continue;
    ++cycles;
    int cur = c;
    while (!used[static_cast<size_t>(cur)]) {
      used[static_cast<size_t>(cur)] = true;
      cur = ocol[static_cast<size_t>(xrow[static_cast<size_t>(cur)])];
    }
  }
  return cycles;
}

LinkData link_data(const GridDiagram& g) {
  LinkData d;
  d.components = components(g);
  for (const auto& dec : g.decorations)
    if (dec.kind == Kind::O) ++d.o_count;
  d.k = g.k();
  d.resolved_size = g.resolved_size();
  return d;
}

int writhe(const GridDiagram& g) {
  if (g.k()) throw Error("writhe is defined on regular diagrams");
  int total = 0;
  for (int c = 0; c < g.cols; ++c) {
    auto vc = g.in_col(c);
    int o_r = vc[0].kind == Kind::O ? vc[0].row : vc[1].row;
    int x_r = vc[0].kind == Kind::X ? vc[0].row : vc[1].row;
    int sv = o_r < x_r ? 1 : -1;  // vertical strand oriented O -> X
    for (int r = 0; r < g.rows; ++r) {
      if (r <= std::min(o_r, x_r) || r >= std::max(o_r, x_r)) continue;
      auto hr = g.in_row(r);
      int o_c = hr[0].kind == Kind::O ? hr[0].col : hr[1].col;
      int x_c = hr[0].kind == Kind::X ? hr[0].col : hr[1].col;
      if (c <= std::min(o_c, x_c) || c >= std::max(o_c, x_c)) continue;
      int sh = x_c < o_c ? 1 : -1;  // horizontal strand oriented X -> O
      total += -sv * sh;            // det of (over, under) directions
    }
  }
  return total;
}

GridDiagram transpose(const GridDiagram& g) {
  GridDiagram out;
  out.cols = g.rows;
  out.rows = g.cols;
  for (const auto& d : g.decorations) out.decorations.push_back({d.row, d.col, d.kind});
  for (const auto& s : g.singular)
    out.singular.push_back({s.axis == Axis::Column ? Axis::Row : Axis::Column, s.index, s.orient});
  finalize(out);
  return out;
}

GridDiagram swap_decorations(const GridDiagram& g) {
  GridDiagram out = g;
  for (auto& d : out.decorations) d.kind = other_kind(d.kind);
  return out;
}

GridDiagram negate_flags(const GridDiagram& g) {
  GridDiagram out = g;
  for (auto& s : out.singular) s.orient = s.orient == Orient::Plus ? Orient::Minus : Orient::Plus;
  return out;
}

GridDiagram rotate_quarter(const GridDiagram& g) {
  GridDiagram out;
  out.cols = g.rows;
  out.rows = g.cols;
  for (const auto& d : g.decorations) out.decorations.push_back({g.rows - 1 - d.row, d.col, d.kind});
  for (const auto& s : g.singular) {
    if (s.axis == Axis::Column)
      out.singular.push_back({Axis::Row, s.index, s.orient});
    else
      out.singular.push_back({Axis::Column, g.rows - 1 - s.index, s.orient});
  }
  finalize(out);
  return out;
}

}  // namespace gf
