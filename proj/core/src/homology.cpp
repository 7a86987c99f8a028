#include "gridfloer/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "gridfloer/util.hpp"

namespace gf {

namespace {

void check_shape(const SparseMatrix& m) {
  for (const auto& e : m.entries)
    if (e.row < 0 || e.row >= m.rows || e.col < 0 || e.col >= m.cols)
      throw Error("matrix entry out of range");
}

// Sorted symmetric difference, the F2 row update a ^= b.
void xor_into(std::vector<int32_t>& a, const std::vector<int32_t>& b,
              std::vector<int32_t>& scratch, std::vector<int32_t>& toggled) {
  scratch.clear();
  toggled.clear();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && *ia < *ib)) {
      scratch.push_back(*ia++);
    } else if (ia == a.end() || *ib < *ia) {
      scratch.push_back(*ib);
      toggled.push_back(*ib++);
    } else {
      toggled.push_back(*ib);
      ++ia;
      ++ib;
    }
  }
  a.swap(scratch);
}

// Signed magnitude big integer; just enough arithmetic for Smith normal
// form (add, subtract, multiply, Euclidean divmod, compare).
struct Big {
  int sign = 0;                // -1, 0, +1
  std::vector<uint32_t> mag;   // little-endian base 2^32; empty iff sign 0

  Big() = default;
  explicit Big(long long v) {
    unsigned long long u;
    if (v < 0) {
      sign = -1;
      u = static_cast<unsigned long long>(-(v + 1)) + 1;
    } else if (v > 0) {
      sign = 1;
      u = static_cast<unsigned long long>(v);
    } else {
      return;
    }
    while (u) {
      mag.push_back(static_cast<uint32_t>(u));
      u >>= 32;
    }
  }

  bool is_zero() const { return sign == 0; }
  bool is_one() const { return sign == 1 && mag.size() == 1 && mag[0] == 1; }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
      uint64_t s = carry;
      if (i < a.size()) s += a[i];
      if (i < b.size()) s += b[i];
      r.push_back(static_cast<uint32_t>(s));
      carry = s >> 32;
    }
    return r;
  }

  // a - b with a >= b.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t d = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
      borrow = d < 0;
      if (d < 0) d += int64_t{1} << 32;
      r[i] = static_cast<uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  friend Big operator+(const Big& a, const Big& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    Big r;
    if (a.sign == b.sign) {
      r.sign = a.sign;
      r.mag = add_mag(a.mag, b.mag);
      return r;
    }
    int c = cmp_mag(a.mag, b.mag);
    if (c == 0) return r;
    if (c > 0) {
      r.sign = a.sign;
      r.mag = sub_mag(a.mag, b.mag);
    } else {
      r.sign = b.sign;
      r.mag = sub_mag(b.mag, a.mag);
    }
    return r;
  }

  Big operator-() const {
    Big r = *this;
    r.sign = -r.sign;
    return r;
  }
  friend Big operator-(const Big& a, const Big& b) { return a + (-b); }

  friend Big operator*(const Big& a, const Big& b) {
    Big r;
    if (a.sign == 0 || b.sign == 0) return r;
    r.sign = a.sign * b.sign;
    r.mag.assign(a.mag.size() + b.mag.size(), 0);
    for (size_t i = 0; i < a.mag.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.mag.size() || carry; ++j) {
        uint64_t cur = r.mag[i + j] + carry;
        if (j < b.mag.size()) cur += static_cast<uint64_t>(a.mag[i]) * b.mag[j];
        r.mag[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
    }
    while (!r.mag.empty() && r.mag.back() == 0) r.mag.pop_back();
    if (r.mag.empty()) r.sign = 0;
    return r;
  }

  // Truncated quotient and remainder by magnitude (C semantics): picks
  // q = trunc(a/b), r = a - q*b.
  static void divmod(const Big& a, const Big& b, Big& q, Big& r) {
    if (b.sign == 0) throw Error("internal: big integer division by zero");
    q = Big();
    r = Big();
    if (a.sign == 0) return;
    if (cmp_mag(a.mag, b.mag) < 0) {
      r = a;
      return;
    }
    // Long division, bitwise over the magnitude.
    std::vector<uint32_t> rem;
    std::vector<uint32_t> quo(a.mag.size(), 0);
    for (size_t bit = a.mag.size() * 32; bit-- > 0;) {
      // rem = rem * 2 + bit
      uint32_t carry = (a.mag[bit / 32] >> (bit % 32)) & 1u;
      for (size_t i = 0; i < rem.size(); ++i) {
        uint32_t nx = rem[i] >> 31;
        rem[i] = (rem[i] << 1) | carry;
        carry = nx;
      }
      if (carry) rem.push_back(carry);
      if (cmp_mag(rem, b.mag) >= 0) {
        rem = sub_mag(rem, b.mag);
        quo[bit / 32] |= 1u << (bit % 32);
      }
    }
    while (!quo.empty() && quo.back() == 0) quo.pop_back();
    if (!quo.empty()) {
      q.mag = quo;
      q.sign = a.sign * b.sign;
    }
    if (!rem.empty()) {
      r.mag = rem;
      r.sign = a.sign;
    }
  }

  Big abs() const {
    Big r = *this;
    if (r.sign < 0) r.sign = 1;
    return r;
  }

  long long to_ll() const {
    unsigned long long u = 0;
    if (mag.size() > 2) throw Error("invariant factor exceeds the long long range");
    for (size_t i = mag.size(); i-- > 0;) u = (u << 32) | mag[i];
    if (sign >= 0) {
      if (u > static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
        throw Error("invariant factor exceeds the long long range");
      return static_cast<long long>(u);
    }
    if (u > static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1)
      throw Error("invariant factor exceeds the long long range");
    return -static_cast<long long>(u - 1) - 1;
  }
};

}  // namespace

int64_t rank_f2(const SparseMatrix& m) {
  check_shape(m);
  std::vector<std::vector<int32_t>> rows(static_cast<size_t>(m.rows));
  for (const auto& e : m.entries)
    if (e.value & 1) rows[static_cast<size_t>(e.row)].push_back(static_cast<int32_t>(e.col));
  std::vector<std::set<int32_t>> cols(static_cast<size_t>(m.cols));
  for (size_t r = 0; r < rows.size(); ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end());
    for (int32_t c : row) cols[static_cast<size_t>(c)].insert(static_cast<int32_t>(r));
  }

  std::vector<char> active(rows.size(), 1);
  std::vector<int32_t> scratch, toggled, candidates;
  int64_t rank = 0;
  for (;;) {
    // Pivot: among the shortest live rows, minimal fill score.
    size_t best_len = SIZE_MAX;
    for (size_t r = 0; r < rows.size(); ++r)
      if (active[r] && !rows[r].empty()) best_len = std::min(best_len, rows[r].size());
    if (best_len == SIZE_MAX) break;
    int64_t best_score = -1;
    int32_t prow = -1, pcol = -1;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (!active[r] || rows[r].size() != best_len) continue;
      for (int32_t c : rows[r]) {
        const int64_t score = static_cast<int64_t>(best_len - 1) *
                              (static_cast<int64_t>(cols[static_cast<size_t>(c)].size()) - 1);
        if (best_score < 0 || score < best_score ||
            (score == best_score &&
             (c < pcol || (c == pcol && static_cast<int32_t>(r) < prow)))) {
          best_score = score;
          prow = static_cast<int32_t>(r);
          pcol = c;
        }
      }
    }

    ++rank;
    candidates.assign(cols[static_cast<size_t>(pcol)].begin(),
                      cols[static_cast<size_t>(pcol)].end());
    for (int32_t r : candidates) {
      if (r == prow) continue;
      xor_into(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(prow)], scratch, toggled);
      for (int32_t c : toggled) {
        auto& cs = cols[static_cast<size_t>(c)];
        auto it = cs.find(r);
        if (it != cs.end())
          cs.erase(it);
        else
          cs.insert(r);
      }
    }
    active[static_cast<size_t>(prow)] = 0;
    for (int32_t c : rows[static_cast<size_t>(prow)])
      cols[static_cast<size_t>(c)].erase(prow);
    rows[static_cast<size_t>(prow)].clear();
  }
  return rank;
}

std::vector<long long> smith_normal_form(const SparseMatrix& m) {
  check_shape(m);
  const size_t R = static_cast<size_t>(m.rows), C = static_cast<size_t>(m.cols);
  std::vector<std::vector<Big>> a(R, std::vector<Big>(C));
  for (const auto& e : m.entries) {
    if (!e.value) continue;
    Big& cell = a[static_cast<size_t>(e.row)][static_cast<size_t>(e.col)];
    if (!cell.is_zero()) throw Error("duplicate matrix entry");
    cell = Big(e.value);
  }

  std::vector<long long> factors;
  size_t top = 0;
  while (top < R && top < C) {
    // Find the nonzero entry of minimal magnitude in the working block.
    size_t pr = SIZE_MAX, pc = SIZE_MAX;
    for (size_t i = top; i < R; ++i)
      for (size_t j = top; j < C; ++j) {
        if (a[i][j].is_zero()) continue;
        if (pr == SIZE_MAX || Big::cmp_mag(a[i][j].mag, a[pr][pc].mag) < 0) {
          pr = i;
          pc = j;
        }
      }
    if (pr == SIZE_MAX) break;
    std::swap(a[top], a[pr]);
    for (size_t i = top; i < R; ++i) std::swap(a[i][top], a[i][pc]);

    // Reduce the pivot row and column until both are clear off-pivot.
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = top + 1; i < R; ++i) {
        if (a[i][top].is_zero()) continue;
        Big q, r;
        Big::divmod(a[i][top], a[top][top], q, r);
        if (!q.is_zero())
          for (size_t j = top; j < C; ++j) a[i][j] = a[i][j] - q * a[top][j];
        if (!a[i][top].is_zero()) {
          std::swap(a[top], a[i]);  // remainder is smaller; iterate
          dirty = true;
        }
      }
      for (size_t j = top + 1; j < C; ++j) {
        if (a[top][j].is_zero()) continue;
        Big q, r;
        Big::divmod(a[top][j], a[top][top], q, r);
        if (!q.is_zero())
          for (size_t i = top; i < R; ++i) a[i][j] = a[i][j] - q * a[i][top];
        if (!a[top][j].is_zero()) {
          for (size_t i = top; i < R; ++i) std::swap(a[i][top], a[i][j]);
          dirty = true;
        }
      }
    }

    // Divisibility: the pivot must divide every remaining entry.
    bool restart = false;
    for (size_t i = top + 1; i < R && !restart; ++i)
      for (size_t j = top + 1; j < C && !restart; ++j) {
        if (a[i][j].is_zero()) continue;
        Big q, r;
        Big::divmod(a[i][j], a[top][top], q, r);
        if (!r.is_zero()) {
          for (size_t jj = top; jj < C; ++jj) a[top][jj] = a[top][jj] + a[i][jj];
          restart = true;
        }
      }
    if (restart) continue;

    factors.push_back(a[top][top].abs().to_ll());
    ++top;
  }
  return factors;
}

}  // namespace gf
