#include "gridfloer/table.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "gridfloer/util.hpp"

namespace gf {

void LaurentPoly2::add(int m, int a2, long long c) {
  if (!c) return;
  auto it = terms.find({m, a2});
  if (it == terms.end()) {
    terms.emplace(std::pair{m, a2}, c);
    return;
  }
  it->second += c;
  if (!it->second) terms.erase(it);
}

std::string half_string(int doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

namespace {

// "t^-2 q^3/2" with 1-coefficients and 0-exponents suppressed.
std::string term_string(int m, int a2, long long coeff) {
  std::string body;
  if (m == 1)
    body = "t";
  else if (m != 0)
    body = "t^" + std::to_string(m);
  if (a2 != 0) {
    if (!body.empty()) body += " ";
    if (a2 == 2)
      body += "q";
    else
      body += "q^" + half_string(a2);
  }
  const long long mag = coeff < 0 ? -coeff : coeff;
  if (body.empty()) return std::to_string(mag);
  if (mag == 1) return body;
  return std::to_string(mag) + body;
}

}  // namespace

std::string to_string(const LaurentPoly2& p) {
  if (p.terms.empty()) return "0";
  // Ascending q power, then ascending t power.
  std::vector<std::pair<std::pair<int, int>, long long>> items(p.terms.begin(), p.terms.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.second != b.first.second) return a.first.second < b.first.second;
    return a.first.first < b.first.first;
  });
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& [key, coeff] = items[i];
    if (i == 0)
      out += coeff < 0 ? "-" : "";
    else
      out += coeff < 0 ? " - " : " + ";
    out += term_string(key.first, key.second, coeff);
  }
  return out;
}

VFactor v_factor(const LinkData& link) { return VFactor{link.resolved_size - link.components}; }

BettiTable homology_ranks(const BigradedComplex& cx) {
  const auto bad = d_squared_check(cx);
  if (!bad.empty())
    throw Error("the differential does not square to zero: " + bad.front());

  // Rank (and invariant factors, over Z) of every boundary matrix, keyed by
  // its source block. Matrices are independent tasks.
  struct Info {
    int64_t rank = 0;
    std::vector<long long> torsion;  // factors > 1
  };
  std::vector<std::pair<const BlockKey*, const SparseMatrix*>> work;
  for (const auto& [bk, sm] : cx.boundaries) work.push_back({&bk, &sm});
  std::vector<Info> results(work.size());

  const bool integral = cx.spec.coeff == Coefficients::Z;
  std::atomic<size_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    try {
      for (;;) {
        const size_t at = cursor.fetch_add(1);
        if (at >= work.size()) break;
        Info& info = results[at];
        if (integral) {
          for (long long d : smith_normal_form(*work[at].second)) {
            ++info.rank;
            if (d != 1) info.torsion.push_back(d);
          }
        } else {
          info.rank = rank_f2(*work[at].second);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      cursor.store(work.size());
    }
  };
  const int jobs = std::max(1, cx.spec.jobs);
  if (jobs == 1 || work.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int spawn = std::min<int>(jobs, static_cast<int>(work.size()));
    pool.reserve(static_cast<size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::map<BlockKey, Info*> by_source;
  for (size_t i = 0; i < work.size(); ++i) by_source.emplace(*work[i].first, &results[i]);

  BettiTable bt;
  bt.coeff = cx.spec.coeff;
  for (const auto& [bk, gens] : cx.blocks) {
    int64_t rank = static_cast<int64_t>(gens.size());
    if (auto it = by_source.find(bk); it != by_source.end()) rank -= it->second->rank;
    std::vector<long long> torsion;
    if (auto it = by_source.find(BlockKey{bk.a2, bk.m + 1}); it != by_source.end()) {
      rank -= it->second->rank;
      torsion = it->second->torsion;
    }
    if (rank < 0) throw Error("internal: negative homology rank");
    if (rank > 0) bt.ranks.emplace(bk, rank);
    if (!torsion.empty()) bt.torsion.emplace(bk, std::move(torsion));
  }
  return bt;
}

LaurentPoly2 poincare(const BettiTable& bt) {
  LaurentPoly2 p;
  for (const auto& [bk, rank] : bt.ranks) p.add(bk.m, bk.a2, rank);
  return p;
}

LaurentPoly2 euler(const BettiTable& bt) {
  LaurentPoly2 p;
  for (const auto& [bk, rank] : bt.ranks) p.add(0, bk.a2, bk.m % 2 ? -rank : rank);
  return p;
}

LaurentPoly2 deconvolve_V(const LaurentPoly2& p, VFactor v) {
  if (v.exponent < 0) throw Error("negative deconvolution exponent");
  LaurentPoly2 cur = p;
  for (int step = 0; step < v.exponent; ++step) {
    if (cur.terms.empty()) break;
    int m_lo = cur.terms.begin()->first.first;
    for (const auto& [key, c] : cur.terms) m_lo = std::min(m_lo, key.first);
    LaurentPoly2 quot;
    LaurentPoly2 residual = cur;
    while (!residual.terms.empty()) {
      const auto [key, c] = *residual.terms.rbegin();  // maximal t power
      const auto [m, a2] = key;
      if (m < m_lo + 1)
        throw Error("inexact division by the degree-(-1,-1) factor");
      quot.add(m, a2, c);
      residual.add(m, a2, -c);
      residual.add(m - 1, a2 - 2, -c);
    }
    cur = std::move(quot);
  }
  for (const auto& [key, c] : cur.terms)
    if (c < 0) throw Error("deconvolution produced a negative coefficient");
  return cur;
}

BettiTable hat_table(const BettiTable& tilde, VFactor v) {
  if (!tilde.torsion.empty())
    throw Error("deconvolution of a table with torsion is not defined");
  const LaurentPoly2 hat = deconvolve_V(poincare(tilde), v);
  BettiTable bt;
  bt.coeff = tilde.coeff;
  for (const auto& [key, c] : hat.terms) bt.ranks.emplace(BlockKey{key.second, key.first}, c);
  return bt;
}

std::string betti_text(const BettiTable& bt) {
  if (bt.ranks.empty() && bt.torsion.empty()) return "(empty)\n";
  std::set<int> a2s;
  std::set<int> ms;
  for (const auto& [bk, r] : bt.ranks) {
    a2s.insert(bk.a2);
    ms.insert(bk.m);
  }
  for (const auto& [bk, t] : bt.torsion) {
    a2s.insert(bk.a2);
    ms.insert(bk.m);
  }
  auto cell = [&](int a2, int m) -> std::string {
    std::string s;
    if (auto it = bt.ranks.find(BlockKey{a2, m}); it != bt.ranks.end())
      s = std::to_string(it->second);
    if (auto it = bt.torsion.find(BlockKey{a2, m}); it != bt.torsion.end()) {
      s += s.empty() ? "0+[" : "+[";
      for (size_t i = 0; i < it->second.size(); ++i)
        s += (i ? "," : "") + std::to_string(it->second[i]);
      s += "]";
    }
    return s.empty() ? "." : s;
  };

  // Column widths: label column, then one per t power.
  std::vector<std::string> labels;
  for (auto it = a2s.rbegin(); it != a2s.rend(); ++it) labels.push_back(half_string(*it));
  size_t label_w = 3;  // "A\\M"
  for (const auto& l : labels) label_w = std::max(label_w, l.size());
  std::vector<size_t> widths;
  for (int m : ms) {
    size_t w = std::to_string(m).size();
    for (int a2 : a2s) w = std::max(w, cell(a2, m).size());
    widths.push_back(w);
  }

  std::ostringstream os;
  os << std::string(label_w - 3, ' ') << "A\\M";
  size_t wi = 0;
  for (int m : ms) {
    os << "  " << std::string(widths[wi] - std::to_string(m).size(), ' ') << m;
    ++wi;
  }
  os << "\n";
  size_t li = 0;
  for (auto it = a2s.rbegin(); it != a2s.rend(); ++it, ++li) {
    os << std::string(label_w - labels[li].size(), ' ') << labels[li];
    wi = 0;
    for (int m : ms) {
      const std::string c = cell(*it, m);
      os << "  " << std::string(widths[wi] - c.size(), ' ') << c;
      ++wi;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace gf
