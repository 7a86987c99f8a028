#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridfloer/util.hpp"

namespace gf {

enum class Kind : uint8_t { O, X };
enum class Axis : uint8_t { Column, Row };
enum class Orient : uint8_t { Plus, Minus };

inline char kind_char(Kind k) { return k == Kind::O ? 'O' : 'X'; }
inline Kind other_kind(Kind k) { return k == Kind::O ? Kind::X : Kind::O; }

// A decoration cell. Coordinates are 0-based with the origin at the
// bottom-left; the decoration center sits at (col+0.5, row+0.5).
struct Decoration {
  int col = 0;
  int row = 0;
  Kind kind = Kind::O;
  bool operator==(const Decoration&) const = default;
};

// A singular grid line: a column holding two O and two X (resp. a row).
// `orient` selects the distinguished peak type used by the singular
// differential; Plus is the default.
struct SingularElement {
  Axis axis = Axis::Column;
  int index = 0;
  Orient orient = Orient::Plus;
  bool operator==(const SingularElement&) const = default;
};

// A (possibly singular) grid diagram. Regular lines carry one O and one X;
// singular lines carry two of each in an alternating vertical (resp.
// horizontal) pattern. The planar grid need not be square: a grid with
// N = #O decorations has N - #singular-columns columns and N - #singular-rows
// rows; every resolution is a regular N x N grid.
//
// `singular` is kept in scan order (columns left-to-right, then rows
// bottom-to-top); this order binds ResolutionVector bits and orientation
// strings. Immutable by convention: all operations return new diagrams.
struct GridDiagram {
  int cols = 0;
  int rows = 0;
  std::vector<Decoration> decorations;
  std::vector<SingularElement> singular;

  std::optional<Decoration> at(int col, int row) const;
  std::vector<Decoration> in_col(int col) const;   // sorted by row
  std::vector<Decoration> in_row(int row) const;   // sorted by col
  bool is_singular_col(int col) const;
  bool is_singular_row(int row) const;
  int singular_cols() const;
  int singular_rows() const;
  int resolved_size() const;  // N = #O
  int k() const { return static_cast<int>(singular.size()); }
  bool operator==(const GridDiagram&) const = default;
};

// Resolution choice, one bit per singular element in scan order.
using ResolutionVector = std::vector<uint8_t>;

// Parses the grid file format: optional '#' comment lines, a `grid:` line,
// `rows` lines of {O, X, .} top to bottom, optional `orient: <s>` with
// s in {+,-}^k in scan order. Throws Error on syntax or validation problems.
GridDiagram parse_grid(const std::string& text);

// Canonical serialization; parse_grid(serialize_grid(g)) == g.
std::string serialize_grid(const GridDiagram& g);

// Returns the list of invariant violations; empty iff the diagram is valid.
std::vector<std::string> validate(const GridDiagram& g);
bool is_valid(const GridDiagram& g);

struct ResolveTrace {
  GridDiagram grid;                       // regular N x N
  std::vector<Decoration> image;          // image[i] = where decorations[i] went
  std::vector<int> col_base;              // input column -> first output column
  std::vector<int> row_base;              // input row -> first output row
};

// Splits every singular column (row) into two adjacent regular columns
// (rows) according to the bit for that element: bit 0 realizes the positive
// crossing, bit 1 the negative one. |I| must equal k().
GridDiagram resolve(const GridDiagram& g, const ResolutionVector& I);
ResolveTrace resolve_traced(const GridDiagram& g, const ResolutionVector& I);

// Number of link components: cycles of the column pairing (O to X
// vertically) composed with the row pairing (X to O horizontally), computed
// on the all-zero resolution. Identical for every resolution.
int components(const GridDiagram& g);

// Size summary of the presented link.
struct LinkData {
  int components = 0;     // number of link components
  int o_count = 0;        // number of O decorations (= resolved size)
  int k = 0;              // number of singular elements
  int resolved_size = 0;  // N: every resolution is N x N
  bool operator==(const LinkData&) const = default;
};
LinkData link_data(const GridDiagram& g);

// Writhe of the regular diagram: sum of crossing signs, where vertical
// strands (oriented O to X) pass over horizontal strands (oriented X to O).
int writhe(const GridDiagram& g);

// Mirror along the main diagonal: swaps rows and columns, singular columns
// become singular rows (flags preserved), reverses link orientation.
GridDiagram transpose(const GridDiagram& g);

// Exchanges every O with X.
GridDiagram swap_decorations(const GridDiagram& g);

// Returns a copy with every singular element's orientation flag negated.
GridDiagram negate_flags(const GridDiagram& g);

// Quarter turn counterclockwise; four applications give the identity.
GridDiagram rotate_quarter(const GridDiagram& g);

}  // namespace gf
