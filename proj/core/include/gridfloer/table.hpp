#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gridfloer/complex.hpp"
#include "gridfloer/homology.hpp"

namespace gf {

// Laurent polynomial in t and q with exact integer coefficients. Keys are
// (power of t, doubled power of q): q powers may be half-integral, so they
// are carried doubled end to end.
struct LaurentPoly2 {
  std::map<std::pair<int, int>, long long> terms;  // (m, a2) -> coefficient

  void add(int m, int a2, long long c);
  bool operator==(const LaurentPoly2&) const = default;
};

// Canonical rendering: terms ascending by q power then t power, " + " and
// " - " separators, "t^-2", "q^3/2" style exponents, "0" for the zero
// polynomial.
std::string to_string(const LaurentPoly2& p);

// Homology ranks by bigraded block, with the invariant-factor torsion of
// each block's incoming boundary when computed over Z. Blocks with zero
// rank and no torsion are absent.
struct BettiTable {
  Coefficients coeff = Coefficients::F2;
  std::map<BlockKey, int64_t> ranks;
  std::map<BlockKey, std::vector<long long>> torsion;  // factors > 1 only
  bool operator==(const BettiTable&) const = default;
};

// The graded tensor factor whose generators sit in degrees (0,0) and
// (-1,-1); the full complex carries exponent N - #components of it relative
// to the blocked one.
struct VFactor {
  int exponent = 0;
};
VFactor v_factor(const LinkData& link);

// Homology of every block: rank = dim - rank(outgoing) - rank(incoming)
// over the complex's coefficients; over Z additionally reports the torsion
// of the incoming boundary. Throws if the differential does not square to
// zero. Matrix ranks are computed in parallel per cx.spec.jobs.
BettiTable homology_ranks(const BigradedComplex& cx);

// poincare: sum of rank * t^m q^(a2/2). euler: poincare at t = -1 (a
// polynomial in q alone). Torsion does not contribute.
LaurentPoly2 poincare(const BettiTable& bt);
LaurentPoly2 euler(const BettiTable& bt);

// Exact quotient by (1 + t^-1 q^-1)^exponent. Throws if any division step
// is inexact or the final quotient has a negative coefficient.
LaurentPoly2 deconvolve_V(const LaurentPoly2& p, VFactor v);

// Table whose poincare polynomial is deconvolve_V(poincare(tilde), v);
// requires a torsion-free input table.
BettiTable hat_table(const BettiTable& tilde, VFactor v);

// Plain-text table: rows are q powers (descending), columns t powers
// (ascending); cells hold ranks, with "+[d1,d2,...]" appended where torsion
// is present.
std::string betti_text(const BettiTable& bt);

// "3/2"-style rendering of a doubled integer.
std::string half_string(int doubled);

}  // namespace gf
