#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridfloer/combinatorics.hpp"
#include "gridfloer/grid.hpp"
#include "gridfloer/homology.hpp"

namespace gf {

// Coefficient ring for the boundary matrices.
enum class Coefficients { F2, Z };

// Parameters controlling which complex is assembled.
//
// policy selects the count filter on the polygons that contribute to the
// boundary: AvoidAll keeps only polygons containing no decoration at all
// (the fully blocked complex), AvoidOOnly keeps polygons free of O
// decorations but lets X decorations in, which destroys the second grading;
// generators of an AvoidOOnly complex are therefore graded by the first
// grading alone and their second grading is stored as 0.  AvoidNone is not
// a chain complex (its differential does not square to zero) and is
// rejected.
struct ComplexSpec {
  Policy policy = Policy::AvoidAll;
  Coefficients coeff = Coefficients::F2;
  std::optional<PeakConvention> peaks;  // override the default convention
  int cap = kDefaultGeneratorCap;       // refuse resolved sizes above this
  bool force = false;                   // override the cap
  int jobs = 1;                         // worker threads for assembly
  bool operator==(const ComplexSpec&) const = default;
};

// One bigraded block of the complex.
struct BlockKey {
  int a2 = 0;  // doubled second grading (0 throughout under AvoidOOnly)
  int m = 0;   // first grading (an integer)
  bool operator==(const BlockKey&) const = default;
  bool operator<(const BlockKey& o) const {
    if (a2 != o.a2) return a2 < o.a2;
    return m < o.m;
  }
};

// Generators are stored as packed keys: (resolution mask << 45) | rank of
// the matching permutation.  16! < 2^45, so the packing is exact for every
// grid the library accepts.  Keys ascend in enumeration order, so each
// block's generator list is sorted and positions can be recovered by binary
// search.
uint64_t pack_generator(uint32_t mask, uint64_t perm_rank);
uint32_t generator_mask(uint64_t key);
uint64_t generator_rank(uint64_t key);

// The assembled complex.  blocks maps each occupied bigrading to its sorted
// generator keys; boundaries maps a source bigrading to the matrix of the
// differential into (a2, m - 1) written over the chosen coefficients
// (columns = source generators, rows = target generators, both in block
// order).  Blocks with no generators are absent; boundary matrices that
// would be zero or whose target block is empty are absent too.
struct BigradedComplex {
  LinkData link;
  ComplexSpec spec;
  std::map<BlockKey, std::vector<uint64_t>> blocks;
  std::map<BlockKey, SparseMatrix> boundaries;

  // Position of a generator key inside its block, or -1 if absent.
  int64_t position(const BlockKey& bk, uint64_t key) const;
};

// Enumerate all generators, compute both gradings, and assemble the
// boundary matrices by enumerating the polygons leaving every generator.
// Deterministic: the result is byte-for-byte identical for every jobs
// value.  Throws on AvoidNone and on resolved sizes above the cap (unless
// force is set).
BigradedComplex build_complex(const GridDiagram& g, const ComplexSpec& spec);

// Compose every consecutive pair of boundary matrices and report the
// nonzero entries of the products.  An empty report means the differential
// squares to zero.  Each report line identifies the source block and the
// offending matrix entry.
std::vector<std::string> d_squared_check(const BigradedComplex& cx);

// Text dump of the boundary matrices: one header line per block followed by
// the triplets "row col value", for debugging and external inspection.
std::string dump_matrices(const BigradedComplex& cx);

}  // namespace gf
