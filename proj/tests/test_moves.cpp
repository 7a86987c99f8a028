// Elementary grid moves: cyclic permutations, commutations, (de)stabilizations,
// flips, and column/row rotations of double points, plus the move-command
// grammar and seeded random walks. Each move must emit a valid grid and leave
// the homology table unchanged.
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "gridfloer/complex.hpp"
#include "gridfloer/grid.hpp"
#include "gridfloer/homology.hpp"
#include "gridfloer/moves.hpp"
#include "gridfloer/table.hpp"
#include "test_util.hpp"

using namespace gf;

namespace {

// Figure-eight knot on a six-by-six grid, four crossings, writhe zero.
const char* kFigureEightText =
    "grid:\n"
    "X...O.\n"
    ".O...X\n"
    "O..X..\n"
    "..O.X.\n"
    ".X.O..\n"
    "..X..O\n";

// Column spans: {0,3} around {1,2}.
const char* kNestedText =
    "grid:\n"
    "X.O.\n"
    ".O.X\n"
    ".X.O\n"
    "O.X.\n";

// Column spans: {0,2} against {1,3}, the switch configuration.
const char* kSwitchText =
    "grid:\n"
    ".O.X\n"
    "X.O.\n"
    ".X.O\n"
    "O.X.\n";

// Columns 0,1 share row 1; columns 2,3 have disjoint spans; rows 2,3 too.
const char* kTouchingText =
    "grid:\n"
    "...XO\n"
    "...OX\n"
    ".XO..\n"
    "XO...\n"
    "O.X..\n";

BettiTable tilde_of(const GridDiagram& g) {
  return homology_ranks(build_complex(g, ComplexSpec{}));
}

BettiTable hat_of(const GridDiagram& g) {
  return hat_table(tilde_of(g), v_factor(link_data(g)));
}

std::string word_of(const GridDiagram& g, int element) {
  const SingularElement& s = g.singular[static_cast<size_t>(element)];
  auto ds = s.axis == Axis::Column ? g.in_col(s.index) : g.in_row(s.index);
  std::string w;
  for (const auto& d : ds) w += kind_char(d.kind);
  return w;
}

GridDiagram singular_trefoil(Orient o = Orient::Plus) {
  return singularize_pair(gftest::torus_grid(5, 2), Axis::Column, 0, o);
}

// Figure-eight grid with the column pairs (0,1) and (3,4) merged into double
// points; the two orientation flags are independent inputs.
GridDiagram two_double_points(Orient a, Orient b) {
  GridDiagram g = singularize_pair(parse_grid(kFigureEightText), Axis::Column, 0, a);
  return singularize_pair(g, Axis::Column, 2, b);
}

}  // namespace

TEST_CASE("cyclic permutations: identities and index remapping") {
  GridDiagram g = gftest::torus_grid(5, 2);
  CHECK(cyclic_permute(g, Axis::Column, 0) == g);
  CHECK(cyclic_permute(g, Axis::Column, 5) == g);
  CHECK(cyclic_permute(g, Axis::Row, 5) == g);
  CHECK(cyclic_permute(g, Axis::Column, -2) == cyclic_permute(g, Axis::Column, 3));
  CHECK(cyclic_permute(cyclic_permute(g, Axis::Column, 2), Axis::Column, 3) == g);
  GridDiagram shifted = cyclic_permute(g, Axis::Row, 1);
  CHECK(is_valid(shifted));
  CHECK(shifted != g);

  GridDiagram st = singular_trefoil();
  GridDiagram sc = cyclic_permute(st, Axis::Column, 1);
  CHECK(is_valid(sc));
  REQUIRE(sc.k() == 1);
  CHECK(sc.singular[0].index == 1);
  CHECK(cyclic_permute(st, Axis::Column, 4) == st);
  CHECK(cyclic_permute(st, Axis::Column, -1) == cyclic_permute(st, Axis::Column, 3));
}

TEST_CASE("cyclic permutations preserve homology") {
  GridDiagram g = gftest::torus_grid(5, 2);
  const BettiTable base = tilde_of(g);
  CHECK(tilde_of(cyclic_permute(g, Axis::Column, 1)) == base);
  CHECK(tilde_of(cyclic_permute(g, Axis::Row, 2)) == base);

  GridDiagram st = singular_trefoil();
  const BettiTable sbase = tilde_of(st);
  CHECK(tilde_of(cyclic_permute(st, Axis::Column, 1)) == sbase);
  CHECK(tilde_of(cyclic_permute(st, Axis::Row, 2)) == sbase);
}

TEST_CASE("commutation legality") {
  GridDiagram nested = parse_grid(kNestedText);
  GridDiagram sw = parse_grid(kSwitchText);
  GridDiagram touch = parse_grid(kTouchingText);
  REQUIRE(is_valid(nested));
  REQUIRE(is_valid(sw));
  REQUIRE(is_valid(touch));

  CHECK_THROWS_WITH_AS(commute(nested, Axis::Column, 0),
                       doctest::Contains("not a legal commutation"), Error);
  CHECK_THROWS_WITH_AS(commute(sw, Axis::Column, 0),
                       doctest::Contains("not a legal commutation"), Error);
  CHECK_THROWS_WITH_AS(commute(touch, Axis::Column, 0),
                       doctest::Contains("not a legal commutation"), Error);
  CHECK_THROWS_WITH_AS(commute(touch, Axis::Column, 3),
                       doctest::Contains("not a legal commutation"), Error);
  CHECK_THROWS_WITH_AS(commute(touch, Axis::Row, 0),
                       doctest::Contains("not a legal commutation"), Error);
  CHECK_THROWS_AS(commute(gftest::torus_grid(5, 2), Axis::Column, 4), Error);

  GridDiagram swapped = commute(touch, Axis::Column, 2);
  CHECK(is_valid(swapped));
  CHECK(swapped != touch);
  CHECK(commute(swapped, Axis::Column, 2) == touch);
  CHECK(tilde_of(swapped) == tilde_of(touch));

  GridDiagram rswapped = commute(touch, Axis::Row, 2);
  CHECK(is_valid(rswapped));
  CHECK(commute(rswapped, Axis::Row, 2) == touch);
  CHECK(tilde_of(rswapped) == tilde_of(touch));

  // Singular lines never commute.
  GridDiagram p = gftest::singular_pattern_grid("OOXX");
  CHECK_THROWS_WITH_AS(commute(p, Axis::Column, 0), doctest::Contains("singular line"), Error);
  GridDiagram pshift = cyclic_permute(p, Axis::Column, 1);
  CHECK_THROWS_WITH_AS(commute(pshift, Axis::Column, 0), doctest::Contains("singular line"),
                       Error);
}

TEST_CASE("stabilization and destabilization invert each other") {
  GridDiagram g = parse_grid(gftest::kUnknotText);
  const Corner corners[] = {Corner::SW, Corner::SE, Corner::NW, Corner::NE};
  for (const auto& d : g.decorations)
    for (Corner c : corners) {
      GridDiagram h = stabilize(g, d.col, d.row, d.kind, c);
      CHECK(is_valid(h));
      CHECK(h.cols == 3);
      CHECK(h.rows == 3);
      CHECK(destabilize(h, d.col, d.row) == g);
    }
  CHECK(hat_of(stabilize(g, 0, 0, Kind::O, Corner::NE)) == hat_of(g));

  GridDiagram t = gftest::torus_grid(5, 2);
  GridDiagram ts = stabilize(t, 0, 0, Kind::O, Corner::SW);
  CHECK(is_valid(ts));
  CHECK(destabilize(ts, 0, 0) == t);
  CHECK(hat_of(ts) == hat_of(t));

  CHECK_THROWS_WITH_AS(stabilize(t, 0, 1, Kind::O, Corner::SW),
                       doctest::Contains("no decoration"), Error);
  CHECK_THROWS_AS(stabilize(t, 0, 0, Kind::X, Corner::SW), Error);
  CHECK_THROWS_WITH_AS(destabilize(t, 0, 0), doctest::Contains("does not hold"), Error);
  CHECK_THROWS_AS(destabilize(t, 4, 4), Error);
}

TEST_CASE("singular lines restrict the 2x2 moves") {
  GridDiagram p = gftest::singular_pattern_grid("OOXX");
  const Corner corners[] = {Corner::SW, Corner::SE, Corner::NW, Corner::NE};

  // A middle decoration of the element has neighbors on both sides, so every
  // corner points the bend toward a second decoration of the singular column.
  for (Corner c : corners)
    CHECK_THROWS_WITH_AS(stabilize(p, 0, 1, Kind::O, c), doctest::Contains("singular column"),
                         Error);

  // The bottom decoration accepts a downward bend and keeps the word.
  CHECK_THROWS_WITH_AS(stabilize(p, 0, 0, Kind::O, Corner::SW),
                       doctest::Contains("singular column"), Error);
  GridDiagram h = stabilize(p, 0, 0, Kind::O, Corner::NE);
  CHECK(is_valid(h));
  REQUIRE(h.k() == 1);
  CHECK(h.singular[0].index == 1);
  CHECK(word_of(h, 0) == "OOXX");
  CHECK(destabilize(h, 0, 0) == p);

  // The top decoration accepts an upward bend.
  CHECK_THROWS_WITH_AS(stabilize(p, 0, 3, Kind::X, Corner::NW),
                       doctest::Contains("singular column"), Error);
  GridDiagram h2 = stabilize(p, 0, 3, Kind::X, Corner::SE);
  CHECK(is_valid(h2));
  CHECK(word_of(h2, 0) == "OOXX");
  CHECK(destabilize(h2, 0, 3) == p);

  // Rotated analogue for a singular row.
  GridDiagram r = rotation_move(p, 0, false);
  REQUIRE(r.k() == 1);
  REQUIRE(r.singular[0].axis == Axis::Row);
  for (Corner c : corners)
    CHECK_THROWS_WITH_AS(stabilize(r, 1, 0, Kind::O, c), doctest::Contains("singular row"),
                         Error);
  CHECK_THROWS_WITH_AS(stabilize(r, 0, 0, Kind::O, Corner::SW),
                       doctest::Contains("singular row"), Error);
  GridDiagram hr = stabilize(r, 0, 0, Kind::O, Corner::SE);
  CHECK(is_valid(hr));
  CHECK(word_of(hr, 0) == "OOXX");
  CHECK(destabilize(hr, 0, 0) == r);

  // Collapsing a block that holds two decorations of the element is banned.
  CHECK_THROWS_WITH_AS(destabilize(p, 0, 1), doctest::Contains("singular column"), Error);
}

TEST_CASE("flip reverses the singular column") {
  GridDiagram p = gftest::singular_pattern_grid("OOXX");
  GridDiagram f = flip(p, 0);
  CHECK(is_valid(f));
  REQUIRE(f.k() == 1);
  CHECK(f.singular[0].axis == Axis::Column);
  CHECK(f.singular[0].index == 2);
  CHECK(f.singular[0].orient == Orient::Plus);
  CHECK(word_of(f, 0) == "XXOO");
  CHECK(flip(f, 2) == p);
  CHECK(tilde_of(f) == tilde_of(p));

  CHECK_THROWS_WITH_AS(flip(gftest::torus_grid(5, 2), 0), doctest::Contains("pattern not found"),
                       Error);
  CHECK_THROWS_WITH_AS(flip(p, 1), doctest::Contains("not a singular column"), Error);

  GridDiagram st = singular_trefoil();
  GridDiagram fs = flip(st, 0);
  CHECK(is_valid(fs));
  CHECK(tilde_of(fs) == tilde_of(st));
  CHECK(flip(fs, fs.singular[0].index) == st);
}

TEST_CASE("flip preserves homology on a flag-sensitive grid") {
  GridDiagram pp = two_double_points(Orient::Plus, Orient::Plus);
  GridDiagram mp = two_double_points(Orient::Minus, Orient::Plus);
  const BettiTable base = tilde_of(pp);
  // The table hears the flags; otherwise these invariance checks have no bite.
  CHECK(tilde_of(mp) != base);

  GridDiagram f = flip(pp, 0);
  CHECK(is_valid(f));
  REQUIRE(f.k() == 2);
  CHECK(tilde_of(f) == base);
  int back = -1;
  for (int i = 0; i < f.k(); ++i)
    if (f.singular[static_cast<size_t>(i)].axis == Axis::Column && word_of(f, i) == "XOOX")
      back = f.singular[static_cast<size_t>(i)].index;
  REQUIRE(back >= 0);
  CHECK(flip(f, back) == pp);
}

TEST_CASE("rotations exchange singular columns and rows") {
  GridDiagram p = gftest::singular_pattern_grid("OOXX");

  GridDiagram l = rotation_move(p, 0, true);
  CHECK(is_valid(l));
  REQUIRE(l.k() == 1);
  CHECK(l.singular[0] == SingularElement{Axis::Row, 2, Orient::Plus});
  CHECK(word_of(l, 0) == "XXOO");
  CHECK(l.cols == 4);
  CHECK(l.rows == 3);
  CHECK(rotation_move(l, 0, false) == p);

  GridDiagram r = rotation_move(p, 0, false);
  CHECK(is_valid(r));
  REQUIRE(r.k() == 1);
  CHECK(r.singular[0] == SingularElement{Axis::Row, 0, Orient::Plus});
  CHECK(word_of(r, 0) == "OOXX");
  CHECK(rotation_move(r, 0, true) == p);

  CHECK(tilde_of(l) == tilde_of(p));
  CHECK(tilde_of(r) == tilde_of(p));

  GridDiagram st = singular_trefoil();
  GridDiagram sl = rotation_move(st, 0, true);
  GridDiagram sr = rotation_move(st, 0, false);
  CHECK(is_valid(sl));
  CHECK(is_valid(sr));
  CHECK(sl != sr);
  CHECK(rotation_move(sl, 0, false) == st);
  CHECK(rotation_move(sr, 0, true) == st);
  const BettiTable sbase = tilde_of(st);
  CHECK(tilde_of(sl) == sbase);
  CHECK(tilde_of(sr) == sbase);

  CHECK_THROWS_WITH_AS(rotation_move(gftest::torus_grid(5, 2), 0, true),
                       doctest::Contains("pattern not found"), Error);
  CHECK_THROWS_WITH_AS(rotation_move(p, 5, true), doctest::Contains("pattern not found"), Error);
  CHECK_THROWS_WITH_AS(rotation_move(p, -1, false), doctest::Contains("pattern not found"),
                       Error);
}

TEST_CASE("rotations carry the orientation flag on a flag-sensitive grid") {
  GridDiagram g = two_double_points(Orient::Plus, Orient::Plus);
  const BettiTable base = tilde_of(g);

  // The first element's word XOOX is a palindrome, so both directions land on
  // the same merged pair and must agree entirely.
  GridDiagram lt = rotation_move(g, 0, true);
  GridDiagram rt = rotation_move(g, 0, false);
  CHECK(is_valid(lt));
  CHECK(lt == rt);
  REQUIRE(lt.k() == 2);
  CHECK(tilde_of(lt) == base);

  // Scan order puts the remaining column element first, the new row second.
  REQUIRE(lt.singular[1].axis == Axis::Row);
  CHECK(rotation_move(lt, 1, false) == g);
  CHECK(rotation_move(lt, 1, true) == g);
}

TEST_CASE("random move sequences are deterministic and invariant") {
  GridDiagram g = gftest::torus_grid(5, 2);
  CHECK(random_legal_moves(g, 0, 9).empty());

  auto a = random_legal_moves(g, 15, 42, 6);
  auto b = random_legal_moves(g, 15, 42, 6);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(move_command(a[i].first) == move_command(b[i].first));
    CHECK(a[i].second == b[i].second);
  }

  const BettiTable base = hat_of(g);
  auto walk = random_legal_moves(g, 20, 7, 6);
  REQUIRE(walk.size() == 20);
  for (const auto& [spec, grid] : walk) {
    CAPTURE(move_command(spec));
    CHECK(is_valid(grid));
    CHECK(grid.resolved_size() <= 6);
    CHECK(hat_of(grid) == base);
  }

  GridDiagram st = singular_trefoil();
  const BettiTable sbase = hat_of(st);
  auto swalk = random_legal_moves(st, 12, 3, 6);
  REQUIRE(swalk.size() == 12);
  for (const auto& [spec, grid] : swalk) {
    CAPTURE(move_command(spec));
    CHECK(is_valid(grid));
    CHECK(grid.k() == 1);
    CHECK(hat_of(grid) == sbase);
  }
}

TEST_CASE("move commands round-trip") {
  std::vector<MoveSpec> specs;
  {
    MoveSpec m;
    m.kind = MoveKind::Cyclic;
    m.axis = Axis::Column;
    m.amount = 1;
    specs.push_back(m);
    m.axis = Axis::Row;
    m.amount = -3;
    specs.push_back(m);
  }
  {
    MoveSpec m;
    m.kind = MoveKind::Commute;
    m.axis = Axis::Row;
    m.index = 3;
    specs.push_back(m);
  }
  {
    MoveSpec m;
    m.kind = MoveKind::Stabilize;
    m.col = 2;
    m.row = 4;
    m.corner_kind = Kind::X;
    m.corner = Corner::NE;
    specs.push_back(m);
  }
  {
    MoveSpec m;
    m.kind = MoveKind::Destabilize;
    m.col = 0;
    m.row = 1;
    specs.push_back(m);
  }
  {
    MoveSpec m;
    m.kind = MoveKind::Flip;
    m.index = 2;
    specs.push_back(m);
  }
  {
    MoveSpec m;
    m.kind = MoveKind::Rotation;
    m.index = 1;
    m.left = true;
    specs.push_back(m);
    m.index = 0;
    m.left = false;
    specs.push_back(m);
  }
  for (const auto& m : specs) CHECK(parse_move(move_command(m)) == m);

  CHECK(move_command(specs[0]) == "cyclic col 1");
  CHECK(move_command(specs[2]) == "commute row 3");
  CHECK(move_command(specs[3]) == "stab 2 4 X ne");
  CHECK(move_command(specs[4]) == "destab 0 1");
  CHECK(move_command(specs[5]) == "flip col 2");
  CHECK(move_command(specs[6]) == "rot 1 left");
  CHECK(move_command(specs[7]) == "rot 0 right");

  const char* bad[] = {"",
                       "jiggle col 2",
                       "cyclic col",
                       "cyclic diag 1",
                       "cyclic col 1.5",
                       "commute col 1 2",
                       "stab 1 2 Q sw",
                       "stab 1 2 O up",
                       "destab x y",
                       "flip row 1",
                       "rot 0 sideways"};
  for (const char* s : bad) {
    CAPTURE(s);
    CHECK_THROWS_WITH_AS(parse_move(s), doctest::Contains("unrecognized move command"), Error);
  }

  GridDiagram t = gftest::torus_grid(5, 2);
  GridDiagram p = gftest::singular_pattern_grid("OOXX");
  GridDiagram touch = parse_grid(kTouchingText);
  GridDiagram u = parse_grid(gftest::kUnknotText);
  CHECK(apply_move(t, parse_move("cyclic col 1")) == cyclic_permute(t, Axis::Column, 1));
  CHECK(apply_move(touch, parse_move("commute col 2")) == commute(touch, Axis::Column, 2));
  GridDiagram us = stabilize(u, 0, 0, Kind::O, Corner::NE);
  CHECK(apply_move(u, parse_move("stab 0 0 O ne")) == us);
  CHECK(apply_move(us, parse_move("destab 0 0")) == destabilize(us, 0, 0));
  CHECK(apply_move(p, parse_move("flip col 0")) == flip(p, 0));
  CHECK(apply_move(p, parse_move("rot 0 left")) == rotation_move(p, 0, true));
}

TEST_CASE("resolving and merging a double point invert each other") {
  GridDiagram p = gftest::singular_pattern_grid("OOXX");
  CHECK(singularize_pair(gftest::torus_grid(4, 2), Axis::Column, 0, Orient::Plus) == p);
  CHECK(resolve_element(p, 0, 1) == gftest::torus_grid(4, 2));
  GridDiagram r0 = resolve_element(p, 0, 0);
  CHECK(is_valid(r0));
  CHECK(r0 != gftest::torus_grid(4, 2));

  for (const char* pat : {"OOXX", "OXXO", "XOOX", "XXOO"}) {
    GridDiagram g = gftest::singular_pattern_grid(pat);
    for (uint8_t bit : {0, 1}) {
      GridDiagram res = resolve_element(g, 0, bit);
      CHECK(is_valid(res));
      CHECK(res.k() == 0);
      CHECK(singularize_pair(res, Axis::Column, 0, Orient::Plus) == g);
    }
  }

  CHECK_THROWS_WITH_AS(singularize_pair(gftest::torus_grid(4, 1), Axis::Column, 0, Orient::Plus),
                       doctest::Contains("cannot merge"), Error);
  CHECK_THROWS_WITH_AS(singularize_pair(p, Axis::Column, 0, Orient::Plus),
                       doctest::Contains("cannot merge"), Error);
  CHECK_THROWS_WITH_AS(resolve_element(p, 3, 0), doctest::Contains("no singular element"), Error);
}
