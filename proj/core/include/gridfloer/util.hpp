#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace gf {

// Thrown on malformed input or misuse of an operation (bad file, illegal
// move request, out-of-range index). Validation problems on an otherwise
// well-formed grid are reported as strings instead, see validate().
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kMaxGridSize = 16;

// Permutation on {0..n-1}, value semantics, capacity kMaxGridSize.
struct Perm {
  uint8_t n = 0;
  std::array<uint8_t, kMaxGridSize> v{};

  static Perm identity(int n) {
    Perm p;
    p.n = static_cast<uint8_t>(n);
    for (int i = 0; i < n; ++i) p.v[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
    return p;
  }
  uint8_t operator[](int i) const { return v[static_cast<size_t>(i)]; }
  uint8_t& operator[](int i) { return v[static_cast<size_t>(i)]; }
  bool operator==(const Perm& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (v[static_cast<size_t>(i)] != o.v[static_cast<size_t>(i)]) return false;
    return true;
  }
  Perm inverse() const {
    Perm r;
    r.n = n;
    for (int i = 0; i < n; ++i) r.v[v[static_cast<size_t>(i)]] = static_cast<uint8_t>(i);
    return r;
  }
  // Right multiplication by the transposition (i j): swaps the images at
  // positions i and j.
  void swap_positions(int i, int j) {
    std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
  }
};

inline uint64_t factorial(int n) {
  uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<uint64_t>(i);
  return r;
}

// Lehmer code rank in [0, n!). Stable generator ordering depends on it.
inline uint64_t perm_rank(const Perm& p) {
  uint64_t r = 0;
  for (int i = 0; i < p.n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < p.n; ++j)
      if (p[j] < p[i]) ++smaller;
    r = r * static_cast<uint64_t>(p.n - i) + static_cast<uint64_t>(smaller);
  }
  return r;
}

inline Perm perm_unrank(int n, uint64_t r) {
  Perm p;
  p.n = static_cast<uint8_t>(n);
  std::array<uint8_t, kMaxGridSize> pool{};
  for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
  uint64_t f = factorial(n);
  for (int i = 0; i < n; ++i) {
    f /= static_cast<uint64_t>(n - i);
    int idx = static_cast<int>(r / f);
    r %= f;
    p[i] = pool[static_cast<size_t>(idx)];
    for (int j = idx; j < n - 1 - i; ++j) pool[static_cast<size_t>(j)] = pool[static_cast<size_t>(j + 1)];
  }
  return p;
}

// x lies strictly inside the half-open cyclic interval (a, b) on Z/m.
// a == b denotes the empty interval.
inline bool cyclic_between(int m, int a, int x, int b) {
  int dx = ((x - a) % m + m) % m;
  int db = ((b - a) % m + m) % m;
  return dx > 0 && dx < db;
}

// Length of the walk a -> b going upward on Z/m (in [0, m)).
inline int cyclic_dist(int m, int a, int b) {
  return ((b - a) % m + m) % m;
}

inline std::string to_string(const Perm& p) {
  std::string s = "[";
  for (int i = 0; i < p.n; ++i) {
    if (i) s += ' ';
    s += std::to_string(static_cast<int>(p[i]));
  }
  s += ']';
  return s;
}

}  // namespace gf
