#include "gridfloer/complex.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "gridfloer/signs.hpp"
#include "gridfloer/util.hpp"

namespace gf {

namespace {

constexpr uint64_t kRankBits = 45;  // 16! < 2^45

// Target bigrading of every counted polygon: both policies forbid O
// decorations inside, so the first grading always drops by exactly one and
// the stored second grading is unchanged (it is identically 0 under
// AvoidOOnly).
BlockKey target_key(const BlockKey& src) { return BlockKey{src.a2, src.m - 1}; }

struct ColumnEntry {
  int64_t row;
  long long value;
};

}  // namespace

uint64_t pack_generator(uint32_t mask, uint64_t perm_rank) {
  return (static_cast<uint64_t>(mask) << kRankBits) | perm_rank;
}
uint32_t generator_mask(uint64_t key) { return static_cast<uint32_t>(key >> kRankBits); }
uint64_t generator_rank(uint64_t key) { return key & ((uint64_t{1} << kRankBits) - 1); }

int64_t BigradedComplex::position(const BlockKey& bk, uint64_t key) const {
  auto it = blocks.find(bk);
  if (it == blocks.end()) return -1;
  const auto& v = it->second;
  auto p = std::lower_bound(v.begin(), v.end(), key);
  if (p == v.end() || *p != key) return -1;
  return p - v.begin();
}

BigradedComplex build_complex(const GridDiagram& g, const ComplexSpec& spec) {
  if (spec.policy == Policy::AvoidNone)
    throw Error("the unfiltered polygon count does not square to zero; use AvoidAll or AvoidOOnly");
  const int n = g.resolved_size();
  if (n > spec.cap && !spec.force)
    throw Error("resolved size " + std::to_string(n) + " exceeds the generator cap " +
                std::to_string(spec.cap) + " (use force to override)");

  BigradedComplex cx;
  cx.link = link_data(g);
  cx.spec = spec;

  const PeakConvention conv =
      spec.peaks ? *spec.peaks : PeakConvention::from_grid(g);
  const GridContext ctx(g, conv);
  const int k = ctx.k();
  const uint64_t nfact = factorial(n);
  const bool flatten = spec.policy == Policy::AvoidOOnly;

  // Pass 1: place every generator in its bigraded block. Lehmer rank order
  // is lexicographic order on the permutation word, so walking
  // next_permutation keeps the counter equal to the rank and makes the
  // packed keys ascend; every block list comes out sorted.
  for (uint32_t mask = 0; mask < (uint32_t{1} << k); ++mask) {
    Perm m = Perm::identity(n);
    uint64_t rank = 0;
    do {
      auto [mt, a2] = ctx.gradings_of(mask, m);
      BlockKey bk{flatten ? 0 : a2, mt};
      cx.blocks[bk].push_back(pack_generator(mask, rank));
      ++rank;
    } while (std::next_permutation(m.v.begin(), m.v.begin() + n));
    if (rank != nfact) throw Error("internal: permutation walk missed ranks");
  }

  // Pass 2: boundary columns, one per generator, written into preallocated
  // disjoint slots so any number of workers produces the same bytes.
  struct BlockRef {
    const BlockKey* key;
    const std::vector<uint64_t>* gens;
    uint64_t offset;
  };
  std::vector<BlockRef> refs;
  uint64_t total = 0;
  for (const auto& [bk, gens] : cx.blocks) {
    refs.push_back({&bk, &gens, total});
    total += gens.size();
  }
  std::vector<std::vector<std::vector<ColumnEntry>>> columns(refs.size());
  for (size_t i = 0; i < refs.size(); ++i) columns[i].resize(refs[i].gens->size());

  const bool with_signs = spec.coeff == Coefficients::Z;
  std::atomic<uint64_t> cursor{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    SignTables tables(n);
    std::unordered_map<uint64_t, long long> acc;
    try {
      for (;;) {
        const uint64_t at = cursor.fetch_add(1);
        if (at >= total || failed.load()) break;
        // Locate the block containing the flattened index `at`.
        size_t lo = 0, hi = refs.size();
        while (hi - lo > 1) {
          size_t mid = (lo + hi) / 2;
          if (refs[mid].offset <= at) lo = mid; else hi = mid;
        }
        const BlockRef& ref = refs[lo];
        const uint64_t col = at - ref.offset;
        const uint64_t key = (*ref.gens)[col];
        const uint32_t mask = generator_mask(key);
        const Perm matching = perm_unrank(n, generator_rank(key));

        acc.clear();
        ctx.polygons_raw(mask, matching, spec.policy,
                         [&](const GridContext::RawPolygon& rp) {
                           Perm tm = matching;
                           tm.swap_positions(rp.west, rp.east);
                           const uint64_t tkey =
                               pack_generator(mask | rp.peak_mask, perm_rank(tm));
                           long long v = 1;
                           if (with_signs) {
                             v = sign_rectangle(tables, matching, rp.west, rp.east);
                             if (rp.mu & 1) v = -v;
                           }
                           acc[tkey] += v;
                         });

        std::vector<ColumnEntry>& out = columns[lo][col];
        const BlockKey tk = target_key(*ref.key);
        for (const auto& [tkey, v] : acc) {
          const long long kept = with_signs ? v : (v & 1);
          if (!kept) continue;
          const int64_t row = cx.position(tk, tkey);
          if (row < 0) throw Error("internal: polygon target is not a generator of the expected block");
          out.push_back({row, kept});
        }
        std::sort(out.begin(), out.end(),
                  [](const ColumnEntry& a, const ColumnEntry& b) { return a.row < b.row; });
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      failed.store(true);
    }
  };

  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Pass 3: stitch the columns into per-block sparse matrices.
  for (size_t i = 0; i < refs.size(); ++i) {
    SparseMatrix sm;
    sm.cols = static_cast<int64_t>(refs[i].gens->size());
    const BlockKey tk = target_key(*refs[i].key);
    auto tit = cx.blocks.find(tk);
    sm.rows = tit == cx.blocks.end() ? 0 : static_cast<int64_t>(tit->second.size());
    for (size_t c = 0; c < columns[i].size(); ++c)
      for (const ColumnEntry& e : columns[i][c])
        sm.entries.push_back({e.row, static_cast<int64_t>(c), e.value});
    if (!sm.entries.empty()) cx.boundaries.emplace(*refs[i].key, std::move(sm));
  }
  return cx;
}

std::vector<std::string> d_squared_check(const BigradedComplex& cx) {
  std::vector<std::string> reports;
  const bool mod2 = cx.spec.coeff == Coefficients::F2;
  for (const auto& [bk, first] : cx.boundaries) {
    const auto second_it = cx.boundaries.find(target_key(bk));
    if (second_it == cx.boundaries.end()) continue;
    const SparseMatrix& second = second_it->second;

    // Column ranges of `second`: column c occupies [start[c], start[c+1]).
    std::vector<size_t> start(static_cast<size_t>(second.cols) + 1, 0);
    for (const auto& e : second.entries) ++start[static_cast<size_t>(e.col) + 1];
    for (size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];

    std::unordered_map<int64_t, long long> prod;
    int64_t at_col = -1;
    auto flush = [&]() {
      std::vector<std::pair<int64_t, long long>> items(prod.begin(), prod.end());
      std::sort(items.begin(), items.end());
      for (const auto& [row, v] : items) {
        const long long r = mod2 ? (v & 1) : v;
        if (!r) continue;
        std::ostringstream os;
        os << "d*d at block (a2=" << bk.a2 << ", m=" << bk.m << "): entry row " << row
           << " col " << at_col << " = " << r;
        reports.push_back(os.str());
      }
      prod.clear();
    };
    for (size_t e = 0; e < first.entries.size(); ++e) {
      const auto& ent = first.entries[e];
      if (ent.col != at_col) {
        if (at_col >= 0) flush();
        at_col = ent.col;
      }
      const size_t lo = start[static_cast<size_t>(ent.row)];
      const size_t hi = start[static_cast<size_t>(ent.row) + 1];
      for (size_t f = lo; f < hi; ++f)
        prod[second.entries[f].row] += ent.value * second.entries[f].value;
    }
    if (at_col >= 0) flush();
  }
  return reports;
}

std::string dump_matrices(const BigradedComplex& cx) {
  std::ostringstream os;
  for (const auto& [bk, sm] : cx.boundaries) {
    const BlockKey tk = target_key(bk);
    os << "block a2=" << bk.a2 << " m=" << bk.m << " -> a2=" << tk.a2 << " m=" << tk.m
       << " rows=" << sm.rows << " cols=" << sm.cols << "\n";
    for (const auto& e : sm.entries) os << e.row << " " << e.col << " " << e.value << "\n";
  }
  return os.str();
}

}  // namespace gf
