#include "gridfloer/signs.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gf {

namespace {

// (a * b)(x) = a(b(x)).
Perm compose(const Perm& a, const Perm& b) {
  Perm r;
  r.n = a.n;
  for (int i = 0; i < a.n; ++i) r[i] = a[b[i]];
  return r;
}

void check_symbols(const Perm& sigma, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= sigma.n || j >= sigma.n)
    throw Error("transposition symbols out of range");
}

}  // namespace

SpinElement section(const Perm& sigma) { return SpinElement{sigma, 0}; }

std::vector<std::pair<int, int>> section_letters(const Perm& sigma) {
  std::vector<std::pair<int, int>> letters;
  Perm cur = sigma;
  Perm inv = sigma.inverse();
  for (int m = static_cast<int>(cur.n) - 1; m >= 1; --m) {
    const int a = inv[m];
    if (a == m) continue;
    letters.emplace_back(a, m);
    const int img = cur[m];
    cur.swap_positions(a, m);
    inv[m] = static_cast<uint8_t>(m);
    inv[img] = static_cast<uint8_t>(a);
  }
  std::reverse(letters.begin(), letters.end());
  return letters;
}

// Pushes t[u,v] from the right end of the normal form of section(sigma)
// toward its level. Passing any nonempty letter at a level above max(u,v)
// costs z once, whether the letter is disjoint from the moving symbol
// (t[i,m] t[u,v] = z t[u,v] t[i,m]) or shares the symbol u or v
// (t[u,m] t[u,v] = z t[u,v] t[v,m] and t[v,m] t[u,v] = z t[u,v] t[u,m]).
// At level max(u,v) the symbol is absorbed (empty slot), cancels into z
// (equal letter), or trades places without cost
// (t[a,m] t[u,m] = t[a,u] t[a,m]) and the residue t[a,u] keeps descending.
int transposition_parity(const Perm& sigma, int i, int j) {
  check_symbols(sigma, i, j);
  int parity = 0;
  int u = i, v = j;
  if (u > v) {
    parity ^= 1;  // t[j,i] = z t[i,j]
    std::swap(u, v);
  }
  Perm cur = sigma;
  Perm inv = sigma.inverse();
  for (int m = static_cast<int>(cur.n) - 1; m >= 1; --m) {
    const int a = inv[m];
    const bool has = a != m;
    if (m > v) {
      if (has) parity ^= 1;
    } else {
      if (!has) return parity;
      if (a == u) return parity ^ 1;
      int nu = a, nv = u;
      if (nu > nv) {
        parity ^= 1;
        std::swap(nu, nv);
      }
      u = nu;
      v = nv;
    }
    if (has) {
      const int img = cur[m];
      cur.swap_positions(a, m);
      inv[m] = static_cast<uint8_t>(m);
      inv[img] = static_cast<uint8_t>(a);
    }
  }
  throw Error("internal: transposition pushdown exhausted the word");
}

SpinElement multiply_by_transposition(const SpinElement& e, int i, int j) {
  SpinElement r;
  r.parity = (e.parity ^ transposition_parity(e.perm, i, j)) & 1;
  r.perm = e.perm;
  r.perm.swap_positions(i, j);
  return r;
}

SpinElement multiply(const SpinElement& a, const SpinElement& b) {
  SpinElement r = a;
  for (const auto& [i, m] : section_letters(b.perm)) r = multiply_by_transposition(r, i, m);
  r.parity ^= b.parity;
  return r;
}

SpinElement inverse(const SpinElement& e) {
  const Perm inv = e.perm.inverse();
  // section(inv) * section(perm) = z^g, so section(perm)^{-1} = z^g section(inv).
  const int g = multiply(section(inv), section(e.perm)).parity;
  return SpinElement{inv, (e.parity ^ g) & 1};
}

int cocycle(const Perm& sigma, const Perm& sigma_prime) {
  if (sigma.n != sigma_prime.n) throw Error("cocycle: size mismatch");
  const Perm delta = compose(sigma.inverse(), sigma_prime);
  return multiply(section(sigma), section(delta)).parity;
}

SignTables::SignTables(int n) : n_(n) {
  if (n < 1 || n > kMaxGridSize) throw Error("SignTables: size out of range");
}

int SignTables::rectangle_parity(const Perm& sigma, int west, int east) {
  check_symbols(sigma, west, east);
  const uint64_t key = (perm_rank(sigma) << 8) | static_cast<uint64_t>(west << 4) |
                       static_cast<uint64_t>(east);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const int p = transposition_parity(sigma, west, east);
  memo_.emplace(key, static_cast<uint8_t>(p));
  return p;
}

int sign_rectangle(const Perm& source, int west, int east) {
  return transposition_parity(source, west, east) ? -1 : 1;
}

int sign_rectangle(SignTables& tables, const Perm& source, int west, int east) {
  return tables.rectangle_parity(source, west, east) ? -1 : 1;
}

namespace {

int polygon_mu(const GridPolygon& poly) {
  int mu = 0;
  for (const auto& p : poly.peaks)
    if (p.edge == Edge::East || p.edge == Edge::North) ++mu;
  return mu;
}

}  // namespace

int sign_polygon(const GridPolygon& poly) {
  const int base = sign_rectangle(poly.source.matching, poly.west, poly.east);
  return (polygon_mu(poly) & 1) ? -base : base;
}

int sign_polygon(SignTables& tables, const GridPolygon& poly) {
  const int base = sign_rectangle(tables, poly.source.matching, poly.west, poly.east);
  return (polygon_mu(poly) & 1) ? -base : base;
}

namespace {

bool rect_empty(int n, const Perm& sigma, int w, int e) {
  const int s = sigma[w], nn = sigma[e];
  for (int t = (w + 1) % n; t != e; t = (t + 1) % n)
    if (cyclic_between(n, s, sigma[t], nn)) return false;
  return true;
}

// Cells of the rectangle (w,e) out of sigma, as bits col*n+row.
uint64_t rect_cells(int n, const Perm& sigma, int w, int e) {
  uint64_t bits = 0;
  const int s = sigma[w], nn = sigma[e];
  for (int t = w; t != e; t = (t + 1) % n)
    for (int r = s; r != nn; r = (r + 1) % n) bits |= uint64_t{1} << (t * n + r);
  return bits;
}

struct SqEntry {
  int w1, e1, w2, e2;
  int product;  // sign(rho1) * sign(rho2)
};

struct SqKey {
  uint64_t x, z, once, twice;
  bool operator==(const SqKey&) const = default;
};

struct SqKeyHash {
  size_t operator()(const SqKey& k) const {
    uint64_t h = k.x * 0x9e3779b97f4a7c15ULL;
    h ^= k.z + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= k.once + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= k.twice + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};

}  // namespace

std::vector<std::string> verify_sign_axioms(const GridDiagram& g, const RectangleSign& sign,
                                            int cap) {
  const int n = g.resolved_size();
  if (n > cap)
    throw Error("resolved size " + std::to_string(n) + " exceeds the axiom scan cap " +
                std::to_string(cap));
  if (n > 8) throw Error("axiom scan supports resolved sizes up to 8");
  if (n < 2) return {};
  std::vector<std::string> reports;
  const uint64_t total = factorial(n);

  // Annulus axioms: both decompositions of every thin annulus.
  for (uint64_t rank = 0; rank < total; ++rank) {
    const Perm sigma = perm_unrank(n, rank);
    for (int c = 0; c < n; ++c) {
      // Vertical annulus on the column strip [c, c+1).
      const int e = (c + 1) % n;
      Perm tau = sigma;
      tau.swap_positions(c, e);
      const int prod = sign(sigma, c, e) * sign(tau, c, e);
      if (prod != -1)
        reports.push_back("vertical annulus product is " + std::to_string(prod) + " at sigma=" +
                          to_string(sigma) + " column " + std::to_string(c));
      // Horizontal annulus on the row strip [sigma(c), sigma(c)+1).
      const int b = sigma.inverse()[(sigma[c] + 1) % n];
      if (b == c) continue;
      Perm tau2 = sigma;
      tau2.swap_positions(c, b);
      const int prod2 = sign(sigma, c, b) * sign(tau2, b, c);
      if (prod2 != 1)
        reports.push_back("horizontal annulus product is " + std::to_string(prod2) +
                          " at sigma=" + to_string(sigma) + " row " +
                          std::to_string(sigma[c]));
    }
  }

  // Square axiom: group composable pairs of empty rectangles by the
  // (source, destination, union multiset) triple; each class must hold
  // exactly two decompositions with sign products multiplying to -1.
  std::unordered_map<SqKey, std::vector<SqEntry>, SqKeyHash> groups;
  for (uint64_t rank = 0; rank < total; ++rank) {
    const Perm x = perm_unrank(n, rank);
    for (int w1 = 0; w1 < n; ++w1)
      for (int e1 = 0; e1 < n; ++e1) {
        if (w1 == e1 || !rect_empty(n, x, w1, e1)) continue;
        Perm mid = x;
        mid.swap_positions(w1, e1);
        const int s1 = sign(x, w1, e1);
        const uint64_t cells1 = rect_cells(n, x, w1, e1);
        for (int w2 = 0; w2 < n; ++w2)
          for (int e2 = 0; e2 < n; ++e2) {
            if (w2 == e2 || !rect_empty(n, mid, w2, e2)) continue;
            Perm z = mid;
            z.swap_positions(w2, e2);
            if (z == x) continue;  // thin annuli, handled above
            const uint64_t cells2 = rect_cells(n, mid, w2, e2);
            const int s2 = sign(mid, w2, e2);
            groups[SqKey{rank, perm_rank(z), cells1 ^ cells2, cells1 & cells2}].push_back(
                SqEntry{w1, e1, w2, e2, s1 * s2});
          }
      }
  }
  for (const auto& [key, entries] : groups) {
    if (entries.size() != 2) {
      reports.push_back("square class with " + std::to_string(entries.size()) +
                        " decompositions at x=" + to_string(perm_unrank(n, key.x)) + ", z=" +
                        to_string(perm_unrank(n, key.z)));
      continue;
    }
    if (entries[0].product * entries[1].product != -1)
      reports.push_back(
          "square product is +1 at x=" + to_string(perm_unrank(n, key.x)) + ", z=" +
          to_string(perm_unrank(n, key.z)) + ", rects (" + std::to_string(entries[0].w1) + "," +
          std::to_string(entries[0].e1) + ")+(" + std::to_string(entries[0].w2) + "," +
          std::to_string(entries[0].e2) + ") vs (" + std::to_string(entries[1].w1) + "," +
          std::to_string(entries[1].e1) + ")+(" + std::to_string(entries[1].w2) + "," +
          std::to_string(entries[1].e2) + ")");
  }
  return reports;
}

std::vector<std::string> verify_sign_axioms(const GridDiagram& g, int cap) {
  return verify_sign_axioms(
      g, [](const Perm& s, int w, int e) { return sign_rectangle(s, w, e); }, cap);
}

}  // namespace gf
