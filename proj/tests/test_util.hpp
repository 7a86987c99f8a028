// Shared builders for test grids.
#pragma once

#include <string>

#include "gridfloer/grid.hpp"

namespace gftest {

inline const char* kUnknotText = "grid:\nXO\nOX\n";

// n x n torus grid: O at (i,i), X at (i, (i+shift) mod n).
inline gf::GridDiagram torus_grid(int n, int shift) {
  gf::GridDiagram g;
  g.cols = n;
  g.rows = n;
  for (int i = 0; i < n; ++i) {
    g.decorations.push_back({i, i, gf::Kind::O});
    g.decorations.push_back({i, (i + shift) % n, gf::Kind::X});
  }
  return gf::parse_grid(gf::serialize_grid(g));  // canonical order
}

// Horizontal mirror (reflect columns); produces the mirror link.
inline gf::GridDiagram mirror_cols(const gf::GridDiagram& g) {
  gf::GridDiagram out;
  out.cols = g.cols;
  out.rows = g.rows;
  for (auto d : g.decorations) {
    d.col = g.cols - 1 - d.col;
    out.decorations.push_back(d);
  }
  for (auto s : g.singular) {
    if (s.axis == gf::Axis::Column) s.index = g.cols - 1 - s.index;
    out.singular.push_back(s);
  }
  return gf::parse_grid(gf::serialize_grid(out));  // re-canonicalize
}

// 3-column, 4-row grids whose single singular column 0 realizes each of the
// four legal patterns (given bottom to top).
inline gf::GridDiagram singular_pattern_grid(const std::string& pattern) {
  std::string text;
  if (pattern == "OOXX")
    text = "grid:\nX.O\nXO.\nO.X\nOX.\n";
  else if (pattern == "OXXO")
    text = "grid:\nO.X\nX.O\nXO.\nOX.\n";
  else if (pattern == "XXOO")
    text = "grid:\nO.X\nOX.\nX.O\nXO.\n";
  else if (pattern == "XOOX")
    text = "grid:\nX.O\nO.X\nOX.\nXO.\n";
  else
    throw gf::Error("unknown pattern " + pattern);
  return gf::parse_grid(text);
}

inline std::string pattern_of_col(const gf::GridDiagram& g, int col) {
  std::string s;
  for (const auto& d : g.in_col(col)) s += gf::kind_char(d.kind);
  return s;
}

}  // namespace gftest
