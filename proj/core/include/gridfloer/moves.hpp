#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gridfloer/grid.hpp"

namespace gf {

// Corner of the 2x2 stabilization block that stays empty, by compass
// position inside the block (W/E = local column, S/N = local row).
enum class Corner : uint8_t { SW, SE, NW, NE };

enum class MoveKind : uint8_t { Cyclic, Commute, Stabilize, Destabilize, Flip, Rotation };

// One elementary move. Serializes to a single-line text command:
//   cyclic (col|row) <amount>
//   commute (col|row) <index>
//   stab <col> <row> (O|X) (sw|se|nw|ne)
//   destab <col> <row>
//   flip col <index>
//   rot <element> (left|right)
struct MoveSpec {
  MoveKind kind = MoveKind::Cyclic;
  Axis axis = Axis::Column;    // cyclic, commute
  int index = 0;               // line index; element index for rotation
  int amount = 0;              // cyclic only
  int col = 0;                 // stabilize / destabilize site
  int row = 0;
  Kind corner_kind = Kind::O;  // stabilize: expected kind at the site
  Corner corner = Corner::SW;  // stabilize: which block corner stays empty
  bool left = false;           // rotation direction
  bool operator==(const MoveSpec&) const = default;
};

std::string move_command(const MoveSpec& m);
MoveSpec parse_move(const std::string& line);

// Rotates column (row) indices by amount modulo the count; singular element
// indices follow their lines. Always legal.
GridDiagram cyclic_permute(const GridDiagram& g, Axis axis, int amount);

// Swaps the adjacent lines index and index+1. Legal only when both lines are
// regular and the two decorations of one lie strictly beyond the two of the
// other in the transverse coordinate. Throws Error mentioning "singular
// line" when either line is singular and "not a legal commutation" when the
// spans are nested, share a transverse line, or interleave (the interleaved
// configuration is the crossing switch, which is not an isotopy).
GridDiagram commute(const GridDiagram& g, Axis axis, int index);

// Replaces the decoration at (col,row) by the forced three-decoration 2x2
// block whose empty cell sits at `corner`, inserting one new row and one new
// column beside the site. `kind` must match the replaced decoration. Throws
// Error when the site is empty or of the wrong kind, or when the bend is
// placed toward an adjacent decoration of the same singular line (the block
// may touch at most one decoration of any singular line).
GridDiagram stabilize(const GridDiagram& g, int col, int row, Kind kind, Corner corner);

// Collapses the 2x2 block whose lower-left cell is (col,row): the exact
// inverse of stabilize. Throws Error when the block does not hold exactly
// three decorations in the stabilization pattern, or when the two block
// decorations sharing a line belong to a singular line (such a collapse
// would change the link).
GridDiagram destabilize(const GridDiagram& g, int col, int row);

// Re-presents the double point of the singular column `column` with the
// vertical order of its four decorations reversed. The orientation flag is
// carried over unchanged: the flag distinguishes one of the two resolutions,
// and the flip fixes the bit-1 resolution as a grid, so the distinguished
// side is untouched. An involution. Throws Error("flip pattern not
// found ...") when the column is regular or its neighborhood does not match.
GridDiagram flip(const GridDiagram& g, int column);

// Exchanges the singular element `element` (scan order) between its column
// and row presentations. The resolution at bit 1 is kept fixed as a grid:
// the element is split there and the transverse adjacent line pair whose
// merged word matches the direction is merged back. For a column element
// the right rotation makes the new row's word equal the old column's word
// and the left rotation reverses it; for a row element the roles swap, so
// each direction undoes the other. The orientation flag is carried over
// unchanged (the bit-1 resolution stays the distinguished one's complement
// on both sides, so the flag still marks the same resolved link). Throws
// Error("rotation pattern not found ...") when no adjacent pair matches.
GridDiagram rotation_move(const GridDiagram& g, int element, bool left);

GridDiagram apply_move(const GridDiagram& g, const MoveSpec& m);

// Splits the single singular element `element` into two adjacent regular
// lines according to `bit`, leaving every other element unresolved.
GridDiagram resolve_element(const GridDiagram& g, int element, uint8_t bit);

// Merges the adjacent regular lines index and index+1 into one singular
// line carrying `orient`: a one-element inverse of resolve_element. The
// observed layout determines which resolution bit the input realizes.
// Throws Error when the two lines do not form a resolved singular-line
// layout (a shared transverse line, an invalid word, or mixed strands).
GridDiagram singularize_pair(const GridDiagram& g, Axis axis, int index, Orient orient);

// Seeded walk of legality-checked moves; returns the move applied at each
// step with the grid it produced. Candidate moves are drawn uniformly and
// rejected ones retried; results whose resolved size would grow beyond
// max_size (and the current size) are skipped. Deterministic per seed.
std::vector<std::pair<MoveSpec, GridDiagram>> random_legal_moves(
    const GridDiagram& g, int count, uint64_t seed, int max_size = 10);

}  // namespace gf
