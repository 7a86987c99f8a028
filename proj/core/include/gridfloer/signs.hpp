// Integral signs for rectangle and polygon counts, via a central Z/2
// extension of the symmetric group.
//
// The extension is generated by z and lifted transpositions t[i,j] (i != j)
// subject to
//   z^2 = 1,   z t[i,j] = t[i,j] z = t[j,i],   t[i,j]^2 = z,
//   t[i,j] t[k,l] = z t[k,l] t[i,j]    when {i,j} and {k,l} are disjoint,
//   t[i,j] t[j,k] t[i,j] = t[j,k] t[i,j] t[j,k] = t[i,k].
// Every element factors uniquely as z^parity * w_1 w_2 ... w_{n-1} with
// w_m in {1} or {t[i,m] : i < m}; the word part is the canonical section of
// the projected permutation, so an element is stored as (perm, parity).
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gridfloer/combinatorics.hpp"
#include "gridfloer/grid.hpp"
#include "gridfloer/util.hpp"

namespace gf {

// z^parity * section(perm), parity in {0,1}.
struct SpinElement {
  Perm perm;
  int parity = 0;
  bool operator==(const SpinElement&) const = default;
};

// Canonical lift; its parity is 0 by construction.
SpinElement section(const Perm& sigma);

// Letters (i, m), i < m, of the normal form of section(sigma), ascending
// in m; levels with w_m = 1 are omitted. The product of the t[i,m] in the
// returned order equals section(sigma).
std::vector<std::pair<int, int>> section_letters(const Perm& sigma);

// Parity p with section(sigma) * t[i,j] = z^p * section(sigma * (i j)).
// i != j; the symbol order matters since t[j,i] = z t[i,j]. O(n).
int transposition_parity(const Perm& sigma, int i, int j);

// e * t[i,j].
SpinElement multiply_by_transposition(const SpinElement& e, int i, int j);

// Group product and inverse.
SpinElement multiply(const SpinElement& a, const SpinElement& b);
SpinElement inverse(const SpinElement& e);

// Parity c with section(sigma)^{-1} section(sigma') =
// z^c section(sigma^{-1} sigma'). Equivalently z^c is the defect of the
// section under left division; c(sigma, sigma * rho) with rho a
// transposition is what rectangle signs consume.
int cocycle(const Perm& sigma, const Perm& sigma_prime);

// Memoized rectangle parities. One instance per worker thread; lookups
// mutate the cache, so instances must not be shared without external
// locking.
class SignTables {
 public:
  explicit SignTables(int n);
  int n() const { return n_; }
  // Parity of section(sigma) * t[west,east], symbol order preserved.
  int rectangle_parity(const Perm& sigma, int west, int east);

 private:
  int n_;
  std::unordered_map<uint64_t, uint8_t> memo_;
};

// Sign of an empty rectangle leaving the generator whose matching is
// `source`, bounded by the vertical lines west and east: the z-parity of
// section(source) * t[west,east], symbols in west-then-east order. A
// rectangle wrapping past the rightmost column (east index numerically
// below west) picks up the z from t[e,w] = z t[w,e]; no further planar
// correction exists - the square and annulus axioms pin this uniquely.
int sign_rectangle(const Perm& source, int west, int east);
int sign_rectangle(SignTables& tables, const Perm& source, int west, int east);

// Sign of an empty polygon: the sign of its spike-filled rectangle times
// (-1) per peak pointing left (East edge) or up (North edge).
int sign_polygon(const GridPolygon& poly);
int sign_polygon(SignTables& tables, const GridPolygon& poly);

// Rectangle sign injection point for the axiom scan; arguments are the
// source matching and the west and east lines.
using RectangleSign = std::function<int(const Perm&, int, int)>;

// Exhaustively checks the square, vertical-annulus, and horizontal-annulus
// sign axioms on the resolved torus of the grid. Returns human-readable
// violation reports; empty means every axiom holds. Throws when the
// resolved size exceeds the cap (the scan walks all N! generators).
std::vector<std::string> verify_sign_axioms(const GridDiagram& g, int cap = 6);
std::vector<std::string> verify_sign_axioms(const GridDiagram& g, const RectangleSign& sign,
                                            int cap = 6);

}  // namespace gf
