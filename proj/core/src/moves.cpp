#include "gridfloer/moves.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "gridfloer/util.hpp"

namespace gf {

namespace {

int mod(int v, int n) { return ((v % n) + n) % n; }

std::string line_name(Axis axis, int index) {
  return std::string(axis == Axis::Column ? "column " : "row ") + std::to_string(index);
}

void canon(GridDiagram& g) {
  std::sort(g.decorations.begin(), g.decorations.end(), [](const Decoration& a, const Decoration& b) {
    if (a.col != b.col) return a.col < b.col;
    return a.row < b.row;
  });
  std::sort(g.singular.begin(), g.singular.end(), [](const SingularElement& a, const SingularElement& b) {
    if (a.axis != b.axis) return a.axis < b.axis;
    return a.index < b.index;
  });
}

int corner_qc(Corner c) { return (c == Corner::SE || c == Corner::NE) ? 1 : 0; }
int corner_qr(Corner c) { return (c == Corner::NW || c == Corner::NE) ? 1 : 0; }
Corner make_corner(int qc, int qr) {
  if (qc == 0 && qr == 0) return Corner::SW;
  if (qc == 1 && qr == 0) return Corner::SE;
  if (qc == 0 && qr == 1) return Corner::NW;
  return Corner::NE;
}

// The four decorations of a singular line in position order, with the side
// (0 = first resolved line, 1 = second) that resolution bit `bit` puts each
// one on; the {2nd,4th} strand goes to the first line exactly when the 3rd
// and 4th decorations have equal kind, and bit 1 swaps the lines.
int resolved_side(const std::vector<Decoration>& ds, uint8_t bit, int pos) {
  bool strand24 = (pos == 1 || pos == 3);
  bool same_kind = ds[2].kind == ds[3].kind;
  bool first_line = strand24 == same_kind;
  if (bit) first_line = !first_line;
  return first_line ? 0 : 1;
}

struct MergeResult {
  GridDiagram grid;
  uint8_t bit = 0;
  std::string word;        // kinds of the merged line in position order
  int element_scan = 0;    // scan index of the created element
};

// Attempts to merge the adjacent regular lines index and index+1 into a
// singular line. Returns std::nullopt (with a reason) when the layout is not
// a resolved singular line.
std::optional<MergeResult> try_merge(const GridDiagram& g, Axis axis, int index, Orient orient,
                                     std::string* reason) {
  auto fail = [&](const std::string& why) -> std::optional<MergeResult> {
    if (reason) *reason = why;
    return std::nullopt;
  };
  int count = axis == Axis::Column ? g.cols : g.rows;
  if (index < 0 || index + 1 >= count) return fail("line index out of range");
  bool sing_a = axis == Axis::Column ? g.is_singular_col(index) : g.is_singular_row(index);
  bool sing_b = axis == Axis::Column ? g.is_singular_col(index + 1) : g.is_singular_row(index + 1);
  if (sing_a || sing_b) return fail("a singular line cannot be merged");

  std::vector<Decoration> ds;
  if (axis == Axis::Column) {
    ds = g.in_col(index);
    auto more = g.in_col(index + 1);
    ds.insert(ds.end(), more.begin(), more.end());
    std::sort(ds.begin(), ds.end(), [](const Decoration& a, const Decoration& b) { return a.row < b.row; });
  } else {
    ds = g.in_row(index);
    auto more = g.in_row(index + 1);
    ds.insert(ds.end(), more.begin(), more.end());
    std::sort(ds.begin(), ds.end(), [](const Decoration& a, const Decoration& b) { return a.col < b.col; });
  }
  if (ds.size() != 4) return fail("the two lines do not hold four decorations");
  for (int i = 0; i + 1 < 4; ++i) {
    int a = axis == Axis::Column ? ds[static_cast<size_t>(i)].row : ds[static_cast<size_t>(i)].col;
    int b = axis == Axis::Column ? ds[static_cast<size_t>(i + 1)].row : ds[static_cast<size_t>(i + 1)].col;
    if (a == b) return fail("two decorations share a transverse line");
  }
  if (ds[0].kind == ds[2].kind || ds[1].kind == ds[3].kind)
    return fail("the merged word would not alternate");

  // Each strand must live on one line: positions {0,2} together and {1,3}
  // together, on different lines.
  auto side = [&](int pos) {
    int c = axis == Axis::Column ? ds[static_cast<size_t>(pos)].col : ds[static_cast<size_t>(pos)].row;
    return c == index ? 0 : 1;
  };
  if (side(0) != side(2) || side(1) != side(3) || side(0) == side(1))
    return fail("the strands straddle both lines");

  // Which resolution bit realizes the observed layout.
  uint8_t bit = side(1) == resolved_side(ds, 0, 1) ? 0 : 1;

  MergeResult res;
  res.bit = bit;
  for (const auto& d : ds) res.word += kind_char(d.kind);

  GridDiagram out;
  out.cols = g.cols - (axis == Axis::Column ? 1 : 0);
  out.rows = g.rows - (axis == Axis::Row ? 1 : 0);
  for (auto d : g.decorations) {
    int& coord = axis == Axis::Column ? d.col : d.row;
    if (coord > index) coord -= 1;
    out.decorations.push_back(d);
  }
  for (auto s : g.singular) {
    if (s.axis == axis && s.index > index) s.index -= 1;
    out.singular.push_back(s);
  }
  out.singular.push_back({axis, index, orient});
  canon(out);
  for (size_t i = 0; i < out.singular.size(); ++i)
    if (out.singular[i].axis == axis && out.singular[i].index == index)
      res.element_scan = static_cast<int>(i);
  res.grid = std::move(out);
  return res;
}

// Core of rotation_move; also returns the scan index of the created element.
std::pair<GridDiagram, int> rotate_impl(const GridDiagram& g, int element, bool left) {
  if (element < 0 || element >= g.k())
    throw Error("rotation pattern not found: no singular element at index " + std::to_string(element));
  SingularElement el = g.singular[static_cast<size_t>(element)];
  Axis from = el.axis;
  Axis to = from == Axis::Column ? Axis::Row : Axis::Column;

  std::vector<Decoration> ds = from == Axis::Column ? g.in_col(el.index) : g.in_row(el.index);
  std::string word;
  for (const auto& d : ds) word += kind_char(d.kind);
  std::string target = word;
  // A right rotation of a column (and a left rotation of a row) keeps the
  // word; the other direction reverses it. The flag marks which resolution
  // of the element is the distinguished one, and both resolutions present
  // the same links before and after the exchange, so it carries unchanged.
  bool reversing = from == Axis::Column ? left : !left;
  if (reversing) std::reverse(target.begin(), target.end());
  Orient orient = el.orient;

  GridDiagram resolved = resolve_element(g, element, 1);

  for (int j = 0; j + 1 < 4; ++j) {
    int a = from == Axis::Column ? ds[static_cast<size_t>(j)].row : ds[static_cast<size_t>(j)].col;
    int b = from == Axis::Column ? ds[static_cast<size_t>(j + 1)].row : ds[static_cast<size_t>(j + 1)].col;
    if (b != a + 1) continue;
    auto m = try_merge(resolved, to, a, orient, nullptr);
    if (m && m->bit == 1 && m->word == target)
      return {std::move(m->grid), m->element_scan};
  }
  throw Error("rotation pattern not found: no adjacent " +
              std::string(to == Axis::Row ? "row" : "column") +
              " pair of the element merges into the word " + target);
}

}  // namespace

GridDiagram cyclic_permute(const GridDiagram& g, Axis axis, int amount) {
  int count = axis == Axis::Column ? g.cols : g.rows;
  int m = mod(amount, count);
  GridDiagram out = g;
  if (m == 0) return out;
  for (auto& d : out.decorations) {
    int& coord = axis == Axis::Column ? d.col : d.row;
    coord = mod(coord + m, count);
  }
  for (auto& s : out.singular)
    if (s.axis == axis) s.index = mod(s.index + m, count);
  canon(out);
  return out;
}

GridDiagram commute(const GridDiagram& g, Axis axis, int index) {
  int count = axis == Axis::Column ? g.cols : g.rows;
  if (index < 0 || index + 1 >= count)
    throw Error("commutation rejected: " + line_name(axis, index) + " has no line to its " +
                (axis == Axis::Column ? std::string("right") : std::string("top")));
  for (int i : {index, index + 1}) {
    bool sing = axis == Axis::Column ? g.is_singular_col(i) : g.is_singular_row(i);
    if (sing) throw Error("commutation rejected: " + line_name(axis, i) + " is a singular line");
  }
  auto span = [&](int i) {
    auto ds = axis == Axis::Column ? g.in_col(i) : g.in_row(i);
    int lo = axis == Axis::Column ? ds.front().row : ds.front().col;
    int hi = axis == Axis::Column ? ds.back().row : ds.back().col;
    return std::pair<int, int>{lo, hi};
  };
  auto [alo, ahi] = span(index);
  auto [blo, bhi] = span(index + 1);
  if (!(ahi < blo || bhi < alo)) {
    std::string why;
    if ((alo < blo && bhi < ahi) || (blo < alo && ahi < bhi))
      why = "the spans are nested";
    else if (alo == blo || ahi == bhi || ahi == blo || bhi == alo)
      why = "the spans share a transverse line";
    else
      why = "the spans interleave (a switch is not an isotopy)";
    throw Error("not a legal commutation of " + line_name(axis, index) + " and " +
                line_name(axis, index + 1) + ": " + why);
  }
  GridDiagram out = g;
  for (auto& d : out.decorations) {
    int& coord = axis == Axis::Column ? d.col : d.row;
    if (coord == index)
      coord = index + 1;
    else if (coord == index + 1)
      coord = index;
  }
  canon(out);
  return out;
}

GridDiagram stabilize(const GridDiagram& g, int col, int row, Kind kind, Corner corner) {
  auto site = g.at(col, row);
  if (!site)
    throw Error("stabilization rejected: no decoration at (" + std::to_string(col) + "," +
                std::to_string(row) + ")");
  if (site->kind != kind)
    throw Error("stabilization rejected: the decoration at (" + std::to_string(col) + "," +
                std::to_string(row) + ") is " + kind_char(site->kind) + ", not " + kind_char(kind));

  int qc = corner_qc(corner);
  int qr = corner_qr(corner);
  // The block may touch at most one decoration of a singular line: reject a
  // bend placed toward an adjacent decoration of the site's own element.
  if (g.is_singular_col(col)) {
    int toward = row + (qr == 0 ? 1 : -1);
    if (g.at(col, toward))
      throw Error("stabilization rejected: the block would touch two decorations of a singular column");
  }
  if (g.is_singular_row(row)) {
    int toward = col + (qc == 0 ? 1 : -1);
    if (g.at(toward, row))
      throw Error("stabilization rejected: the block would touch two decorations of a singular row");
  }

  // New column before old column slot s_c, new row before old row slot s_r;
  // the old line then occupies local block coordinate qc (resp. qr).
  int s_c = qc == 0 ? col + 1 : col;
  int s_r = qr == 0 ? row + 1 : row;
  GridDiagram out;
  out.cols = g.cols + 1;
  out.rows = g.rows + 1;
  for (auto d : g.decorations) {
    if (d.col == col && d.row == row) continue;  // replaced by the block
    if (d.col >= s_c) d.col += 1;
    if (d.row >= s_r) d.row += 1;
    out.decorations.push_back(d);
  }
  // Block cells are (col+lc, row+lr) in the new grid; the empty corner is
  // (qc,qr), the diagonal pair next to it carries the site kind.
  Kind other = other_kind(kind);
  out.decorations.push_back({col + qc, row + (1 - qr), kind});
  out.decorations.push_back({col + (1 - qc), row + qr, kind});
  out.decorations.push_back({col + (1 - qc), row + (1 - qr), other});
  for (auto s : g.singular) {
    if (s.axis == Axis::Column && s.index >= s_c) s.index += 1;
    if (s.axis == Axis::Row && s.index >= s_r) s.index += 1;
    out.singular.push_back(s);
  }
  canon(out);
  return out;
}

GridDiagram destabilize(const GridDiagram& g, int col, int row) {
  if (col < 0 || col + 1 >= g.cols || row < 0 || row + 1 >= g.rows)
    throw Error("destabilization rejected: no 2-by-2 block with lower-left cell (" +
                std::to_string(col) + "," + std::to_string(row) + ")");
  std::optional<Decoration> cell[2][2];
  int found = 0;
  for (int lc = 0; lc < 2; ++lc)
    for (int lr = 0; lr < 2; ++lr) {
      cell[lc][lr] = g.at(col + lc, row + lr);
      if (cell[lc][lr]) ++found;
    }
  auto reject = [&] {
    throw Error("destabilization rejected: the block at (" + std::to_string(col) + "," +
                std::to_string(row) + ") does not hold the three-decoration pattern");
  };
  if (found != 3) reject();
  int qc = -1, qr = -1;
  for (int lc = 0; lc < 2; ++lc)
    for (int lr = 0; lr < 2; ++lr)
      if (!cell[lc][lr]) {
        qc = lc;
        qr = lr;
      }
  Kind kind = cell[qc][1 - qr]->kind;
  if (cell[1 - qc][qr]->kind != kind || cell[1 - qc][1 - qr]->kind != other_kind(kind)) reject();

  int dead_col = col + (1 - qc);
  int dead_row = row + (1 - qr);
  if (g.is_singular_col(dead_col))
    throw Error("destabilization rejected: the block holds two decorations of a singular column");
  if (g.is_singular_row(dead_row))
    throw Error("destabilization rejected: the block holds two decorations of a singular row");

  GridDiagram out;
  out.cols = g.cols - 1;
  out.rows = g.rows - 1;
  for (auto d : g.decorations) {
    if (d.col >= col && d.col <= col + 1 && d.row >= row && d.row <= row + 1) continue;
    if (d.col > dead_col) d.col -= 1;
    if (d.row > dead_row) d.row -= 1;
    out.decorations.push_back(d);
  }
  out.decorations.push_back({col, row, kind});
  for (auto s : g.singular) {
    if (s.axis == Axis::Column && s.index > dead_col) s.index -= 1;
    if (s.axis == Axis::Row && s.index > dead_row) s.index -= 1;
    out.singular.push_back(s);
  }
  canon(out);
  return out;
}

GridDiagram resolve_element(const GridDiagram& g, int element, uint8_t bit) {
  if (element < 0 || element >= g.k())
    throw Error("no singular element at index " + std::to_string(element));
  SingularElement el = g.singular[static_cast<size_t>(element)];
  std::vector<Decoration> ds = el.axis == Axis::Column ? g.in_col(el.index) : g.in_row(el.index);
  auto pos_of = [&](const Decoration& d) {
    for (int i = 0; i < 4; ++i)
      if (ds[static_cast<size_t>(i)] == d) return i;
    throw Error("internal: decoration not on its singular line");
  };
  GridDiagram out;
  out.cols = g.cols + (el.axis == Axis::Column ? 1 : 0);
  out.rows = g.rows + (el.axis == Axis::Row ? 1 : 0);
  for (auto d : g.decorations) {
    bool on_line = (el.axis == Axis::Column ? d.col : d.row) == el.index;
    int& coord = el.axis == Axis::Column ? d.col : d.row;
    if (on_line)
      coord += resolved_side(ds, bit, pos_of(d));
    else if (coord > el.index)
      coord += 1;
    out.decorations.push_back(d);
  }
  for (size_t i = 0; i < g.singular.size(); ++i) {
    if (static_cast<int>(i) == element) continue;
    SingularElement s = g.singular[i];
    if (s.axis == el.axis && s.index > el.index) s.index += 1;
    out.singular.push_back(s);
  }
  canon(out);
  return out;
}

GridDiagram singularize_pair(const GridDiagram& g, Axis axis, int index, Orient orient) {
  std::string reason;
  auto m = try_merge(g, axis, index, orient, &reason);
  if (!m)
    throw Error("cannot merge " + line_name(axis, index) + " and " + line_name(axis, index + 1) +
                " into a singular line: " + reason);
  return std::move(m->grid);
}

GridDiagram flip(const GridDiagram& g, int column) {
  int element = -1;
  for (int i = 0; i < g.k(); ++i)
    if (g.singular[static_cast<size_t>(i)].axis == Axis::Column &&
        g.singular[static_cast<size_t>(i)].index == column)
      element = i;
  if (element < 0)
    throw Error("flip pattern not found: column " + std::to_string(column) +
                " is not a singular column");
  try {
    auto [mid, row_element] = rotate_impl(g, element, true);
    return rotate_impl(mid, row_element, true).first;
  } catch (const Error& e) {
    throw Error("flip pattern not found at column " + std::to_string(column) + ": " + e.what());
  }
}

GridDiagram rotation_move(const GridDiagram& g, int element, bool left) {
  return rotate_impl(g, element, left).first;
}

GridDiagram apply_move(const GridDiagram& g, const MoveSpec& m) {
  switch (m.kind) {
    case MoveKind::Cyclic:
      return cyclic_permute(g, m.axis, m.amount);
    case MoveKind::Commute:
      return commute(g, m.axis, m.index);
    case MoveKind::Stabilize:
      return stabilize(g, m.col, m.row, m.corner_kind, m.corner);
    case MoveKind::Destabilize:
      return destabilize(g, m.col, m.row);
    case MoveKind::Flip:
      return flip(g, m.index);
    case MoveKind::Rotation:
      return rotation_move(g, m.index, m.left);
  }
  throw Error("unknown move kind");
}

std::string move_command(const MoveSpec& m) {
  std::string axis = m.axis == Axis::Column ? "col" : "row";
  switch (m.kind) {
    case MoveKind::Cyclic:
      return "cyclic " + axis + " " + std::to_string(m.amount);
    case MoveKind::Commute:
      return "commute " + axis + " " + std::to_string(m.index);
    case MoveKind::Stabilize: {
      static const char* names[] = {"sw", "se", "nw", "ne"};
      return "stab " + std::to_string(m.col) + " " + std::to_string(m.row) + " " +
             kind_char(m.corner_kind) + std::string(" ") + names[static_cast<int>(m.corner)];
    }
    case MoveKind::Destabilize:
      return "destab " + std::to_string(m.col) + " " + std::to_string(m.row);
    case MoveKind::Flip:
      return "flip col " + std::to_string(m.index);
    case MoveKind::Rotation:
      return "rot " + std::to_string(m.index) + (m.left ? " left" : " right");
  }
  throw Error("unknown move kind");
}

MoveSpec parse_move(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tok;
  std::string t;
  while (in >> t) tok.push_back(t);
  auto bad = [&] { throw Error("unrecognized move command: " + line); };
  auto num = [&](size_t i) {
    if (i >= tok.size()) bad();
    try {
      size_t used = 0;
      int v = std::stoi(tok[i], &used);
      if (used != tok[i].size()) bad();
      return v;
    } catch (const std::logic_error&) {
      bad();
      return 0;
    }
  };
  auto axis = [&](size_t i) {
    if (i >= tok.size()) bad();
    if (tok[i] == "col") return Axis::Column;
    if (tok[i] == "row") return Axis::Row;
    bad();
    return Axis::Column;
  };
  if (tok.empty()) bad();
  MoveSpec m;
  if (tok[0] == "cyclic" && tok.size() == 3) {
    m.kind = MoveKind::Cyclic;
    m.axis = axis(1);
    m.amount = num(2);
  } else if (tok[0] == "commute" && tok.size() == 3) {
    m.kind = MoveKind::Commute;
    m.axis = axis(1);
    m.index = num(2);
  } else if (tok[0] == "stab" && tok.size() == 5) {
    m.kind = MoveKind::Stabilize;
    m.col = num(1);
    m.row = num(2);
    if (tok[3] == "O")
      m.corner_kind = Kind::O;
    else if (tok[3] == "X")
      m.corner_kind = Kind::X;
    else
      bad();
    if (tok[4] == "sw")
      m.corner = Corner::SW;
    else if (tok[4] == "se")
      m.corner = Corner::SE;
    else if (tok[4] == "nw")
      m.corner = Corner::NW;
    else if (tok[4] == "ne")
      m.corner = Corner::NE;
    else
      bad();
  } else if (tok[0] == "destab" && tok.size() == 3) {
    m.kind = MoveKind::Destabilize;
    m.col = num(1);
    m.row = num(2);
  } else if (tok[0] == "flip" && tok.size() == 3 && tok[1] == "col") {
    m.kind = MoveKind::Flip;
    m.index = num(2);
  } else if (tok[0] == "rot" && tok.size() == 3) {
    m.kind = MoveKind::Rotation;
    m.index = num(1);
    if (tok[2] == "left")
      m.left = true;
    else if (tok[2] == "right")
      m.left = false;
    else
      bad();
  } else {
    bad();
  }
  return m;
}

std::vector<std::pair<MoveSpec, GridDiagram>> random_legal_moves(const GridDiagram& g, int count,
                                                                 uint64_t seed, int max_size) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<MoveSpec, GridDiagram>> out;
  GridDiagram cur = g;
  auto pick = [&](int n) { return n > 0 ? static_cast<int>(rng() % static_cast<uint64_t>(n)) : 0; };
  int size_cap = std::max(max_size, g.resolved_size());
  for (int step = 0; step < count; ++step) {
    bool emitted = false;
    for (int attempt = 0; attempt < 64 && !emitted; ++attempt) {
      MoveSpec m;
      switch (pick(6)) {
        case 0: {
          m.kind = MoveKind::Cyclic;
          m.axis = pick(2) ? Axis::Row : Axis::Column;
          int n = m.axis == Axis::Column ? cur.cols : cur.rows;
          m.amount = n > 1 ? 1 + pick(n - 1) : 0;
          break;
        }
        case 1: {
          m.kind = MoveKind::Commute;
          m.axis = pick(2) ? Axis::Row : Axis::Column;
          int n = m.axis == Axis::Column ? cur.cols : cur.rows;
          if (n < 2) continue;
          m.index = pick(n - 1);
          break;
        }
        case 2: {
          m.kind = MoveKind::Stabilize;
          const auto& d = cur.decorations[static_cast<size_t>(pick(static_cast<int>(cur.decorations.size())))];
          m.col = d.col;
          m.row = d.row;
          m.corner_kind = d.kind;
          m.corner = make_corner(pick(2), pick(2));
          break;
        }
        case 3: {
          m.kind = MoveKind::Destabilize;
          if (cur.cols < 2 || cur.rows < 2) continue;
          m.col = pick(cur.cols - 1);
          m.row = pick(cur.rows - 1);
          break;
        }
        case 4: {
          m.kind = MoveKind::Flip;
          std::vector<int> cols;
          for (const auto& s : cur.singular)
            if (s.axis == Axis::Column) cols.push_back(s.index);
          if (cols.empty()) continue;
          m.index = cols[static_cast<size_t>(pick(static_cast<int>(cols.size())))];
          break;
        }
        default: {
          m.kind = MoveKind::Rotation;
          if (cur.k() == 0) continue;
          m.index = pick(cur.k());
          m.left = pick(2) != 0;
          break;
        }
      }
      try {
        GridDiagram next = apply_move(cur, m);
        if (next.resolved_size() > size_cap) continue;
        cur = std::move(next);
        out.emplace_back(m, cur);
        emitted = true;
      } catch (const Error&) {
      }
    }
    if (!emitted) {
      // A cyclic shift is always legal and keeps the walk moving.
      MoveSpec m;
      m.kind = MoveKind::Cyclic;
      m.axis = Axis::Column;
      m.amount = cur.cols > 1 ? 1 : 0;
      cur = apply_move(cur, m);
      out.emplace_back(m, cur);
    }
  }
  return out;
}

}  // namespace gf
