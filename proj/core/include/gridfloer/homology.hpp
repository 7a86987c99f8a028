// Sparse matrices and rank computation over F2 and Z.
#pragma once

#include <cstdint>
#include <vector>

namespace gf {

// Column-major-normalized sparse matrix. Entries are sorted by (col, row),
// unique per position, and nonzero. Over F2 values are kept in {1}.
struct SparseMatrix {
  int64_t rows = 0;
  int64_t cols = 0;
  struct Entry {
    int64_t row = 0;
    int64_t col = 0;
    long long value = 0;
    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> entries;

  bool operator==(const SparseMatrix&) const = default;
};

// Rank of a matrix with entries in the two-element field (odd values count
// as 1). Sparse elimination with a minimal-fill pivot rule: among the
// shortest active rows, pick the entry minimizing
// (row length - 1) * (column count - 1), breaking ties toward the lowest
// column then the lowest row index. Deterministic.
int64_t rank_f2(const SparseMatrix& m);

// Invariant factors d1 | d2 | ... | dr (all positive, including any leading
// 1s) of an integer matrix; the rank is the factor count. Internal
// arithmetic is arbitrary-precision, so no overflow occurs; throws only if
// a factor exceeds the long long range.
std::vector<long long> smith_normal_form(const SparseMatrix& m);

}  // namespace gf
