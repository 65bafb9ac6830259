#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msmd/bfs.hpp"
#include "msmd/common.hpp"
#include "msmd/graph.hpp"
#include "msmd/parallel.hpp"
#include "msmd/signature.hpp"

namespace msmd {

inline constexpr std::size_t kDefaultBudget = 16;
inline constexpr std::size_t kHardBudgetCap = 22;

struct SolverOptions {
  std::size_t budget = kDefaultBudget;  // largest n accepted
  unsigned threads = 0;
  // Multiset kind only: stop after this size and report a lower bound.
  std::optional<std::size_t> max_size{};
};

struct SubsetSearch {
  ExtendedCount size;             // infinite: no resolving set exists
  std::vector<Vertex> witness;    // lexicographically least minimum set
  std::uint64_t subsets_examined = 0;
  bool lower_bound_only = false;  // size is a lower bound: sizes below it were exhausted
};

namespace detail {

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// rank-th k-subset of {0..n-1} in lexicographic order.
inline void unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank, std::vector<Vertex>& out) {
  out.resize(k);
  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = next;; ++c) {
      const std::uint64_t with_c = binomial(n - c - 1, k - i - 1);
      if (rank < with_c) {
        out[i] = Vertex(c);
        next = c + 1;
        break;
      }
      rank -= with_c;
    }
  }
}

inline bool next_combination(std::size_t n, std::vector<Vertex>& a) {
  const std::size_t k = a.size();
  for (std::size_t i = k; i-- > 0;) {
    if (a[i] < n - k + i) {
      ++a[i];
      for (std::size_t j = i + 1; j < k; ++j) a[j] = a[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Precomputed distance coordinates for graphs with at most kHardBudgetCap vertices.
class SmallGraphOracle {
 public:
  using Key = std::array<std::uint8_t, kHardBudgetCap + 2>;

  explicit SmallGraphOracle(const Graph& g) : n_(g.order()) {
    const DistanceMatrix dm(g, 1);
    width_ = signature_width(dm.info());
    coord_.resize(n_ * n_);
    dist_.resize(n_ * n_);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v = 0; v < n_; ++v) {
        coord_[u * n_ + v] = static_cast<std::uint8_t>(signature_coordinate(dm(u, v), width_));
        dist_[u * n_ + v] = dm(u, v) == kUnreachable ? 0xff : static_cast<std::uint8_t>(dm(u, v));
      }
    }
  }

  std::size_t order() const { return n_; }

  bool resolves(ResolvingKind kind, const std::vector<Vertex>& R) const {
    std::array<Key, kHardBudgetCap> keys{};
    std::array<std::uint8_t, kHardBudgetCap> in_r{};
    for (Vertex r : R) in_r[r] = 1;
    std::size_t count = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (kind == ResolvingKind::outer_multiset && in_r[v]) continue;
      Key& key = keys[count++];
      key.fill(0);
      if (kind == ResolvingKind::metric) {
        for (std::size_t i = 0; i < R.size(); ++i) key[i] = dist_[v * n_ + R[i]];
      } else {
        for (Vertex r : R) ++key[coord_[v * n_ + r]];
      }
      for (std::size_t j = 0; j + 1 < count; ++j) {
        if (keys[j] == key) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> coord_;
  std::vector<std::uint8_t> dist_;
};

inline void check_budget(const Graph& g, const SolverOptions& opt) {
  if (opt.budget > kHardBudgetCap) {
    throw InputError("exact search budget " + std::to_string(opt.budget) + " exceeds the hard cap of " +
                     std::to_string(kHardBudgetCap) + " vertices");
  }
  if (g.order() > opt.budget) {
    throw BudgetExceeded("graph has " + std::to_string(g.order()) + " vertices; exact search budget is " +
                         std::to_string(opt.budget));
  }
  if (g.order() < 2) throw InputError("exact search needs at least 2 vertices");
}

// Scans sizes 1..max_size in ascending order and, within a size, subsets in
// lexicographic order; returns the first resolving subset. Chunks of one size
// class run in parallel, and the reported set and counter are those of the
// sequential scan.
inline SubsetSearch minimum_resolving_subset(const Graph& g, ResolvingKind kind, const SolverOptions& opt,
                                             std::size_t max_size) {
  check_budget(g, opt);
  const SmallGraphOracle oracle(g);
  const std::size_t n = g.order();
  constexpr std::uint64_t kChunk = 2048;
  const std::size_t batch = resolve_threads(opt.threads) * 4;
  SubsetSearch result;
  std::uint64_t examined = 0;
  for (std::size_t s = 1; s <= std::min(max_size, n); ++s) {
    const std::uint64_t total = binomial(n, s);
    const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
    for (std::uint64_t first = 0; first < chunks; first += batch) {
      const std::size_t here = static_cast<std::size_t>(std::min<std::uint64_t>(batch, chunks - first));
      std::vector<std::uint64_t> hit(here, UINT64_MAX);
      parallel_for(here, opt.threads, [&](std::size_t c) {
        const std::uint64_t begin = (first + c) * kChunk;
        const std::uint64_t end = std::min(total, begin + kChunk);
        std::vector<Vertex> subset;
        unrank_combination(n, s, begin, subset);
        for (std::uint64_t rank = begin; rank < end; ++rank) {
          if (oracle.resolves(kind, subset)) {
            hit[c] = rank;
            return;
          }
          next_combination(n, subset);
        }
      });
      for (std::uint64_t rank : hit) {
        if (rank != UINT64_MAX) {
          result.size = ExtendedCount(s);
          unrank_combination(n, s, rank, result.witness);
          result.subsets_examined = examined + rank + 1;
          return result;
        }
      }
    }
    examined += total;
  }
  result.subsets_examined = examined;
  if (max_size < n) {
    result.size = ExtendedCount(max_size + 1);
    result.lower_bound_only = true;
  } else {
    result.size = ExtendedCount::infinite();
  }
  return result;
}

}  // namespace detail

// beta(G): smallest metric resolving set.
inline SubsetSearch beta_exact(const Graph& g, const SolverOptions& opt = {}) {
  return detail::minimum_resolving_subset(g, ResolvingKind::metric, opt, g.order());
}

// beta_ms^out(G): smallest R separating all pairs outside R.
inline SubsetSearch beta_ms_out_exact(const Graph& g, const SolverOptions& opt = {}) {
  return detail::minimum_resolving_subset(g, ResolvingKind::outer_multiset, opt, g.order());
}

// beta_ms(G). Multiset resolution is not closed under supersets, so every
// subset of a size is examined before moving on, and infinity is reported only
// after all 2^n - 1 non-empty subsets fail. With opt.max_size set, the search
// stops there and returns a lower bound.
inline SubsetSearch beta_ms_exact(const Graph& g, const SolverOptions& opt = {}) {
  return detail::minimum_resolving_subset(g, ResolvingKind::multiset, opt, opt.max_size.value_or(g.order()));
}

struct DimensionResult {
  std::size_t beta = 0;
  std::size_t beta_ms_out = 0;
  ExtendedCount beta_ms;
  std::vector<Vertex> beta_witness;
  std::vector<Vertex> beta_ms_out_witness;
  std::vector<Vertex> beta_ms_witness;  // empty when beta_ms is infinite
  std::uint64_t beta_examined = 0;
  std::uint64_t beta_ms_out_examined = 0;
  std::uint64_t beta_ms_examined = 0;

  std::uint64_t subsets_examined() const { return beta_examined + beta_ms_out_examined + beta_ms_examined; }
};

// All three dimensions, with each witness re-verified through verify_resolving
// and the chain beta_ms >= beta_ms_out >= beta checked.
inline DimensionResult dimension_report(const Graph& g, const SolverOptions& opt = {}) {
  SolverOptions full = opt;
  full.max_size.reset();
  const auto metric = beta_exact(g, full);
  const auto outer = beta_ms_out_exact(g, full);
  const auto multiset = beta_ms_exact(g, full);

  DimensionResult r;
  r.beta = metric.size.value();
  r.beta_ms_out = outer.size.value();
  r.beta_ms = multiset.size;
  r.beta_witness = metric.witness;
  r.beta_ms_out_witness = outer.witness;
  r.beta_ms_witness = multiset.witness;
  r.beta_examined = metric.subsets_examined;
  r.beta_ms_out_examined = outer.subsets_examined;
  r.beta_ms_examined = multiset.subsets_examined;

  const SignatureOptions sig{std::nullopt, 1};
  auto reverify = [&](const std::vector<Vertex>& R, ResolvingKind kind) {
    if (!verify_resolving(g, R, kind, sig).resolving) {
      throw std::logic_error(std::string("dimension_report: ") + std::string(to_string(kind)) +
                             " witness failed re-verification");
    }
  };
  reverify(r.beta_witness, ResolvingKind::metric);
  reverify(r.beta_ms_out_witness, ResolvingKind::outer_multiset);
  if (r.beta_ms.is_finite()) reverify(r.beta_ms_witness, ResolvingKind::multiset);

  const bool chain = r.beta_ms_out >= r.beta && (r.beta_ms.is_infinite() || r.beta_ms.value() >= r.beta_ms_out);
  if (!chain) throw std::logic_error("dimension_report: chain beta_ms >= beta_ms_out >= beta violated");
  if (r.beta + 1 > g.order() || r.beta_ms_out + 1 > g.order()) {
    throw std::logic_error("dimension_report: dimension exceeds n - 1");
  }
  return r;
}

struct NonMonotoneWitness {
  std::vector<Vertex> resolving;  // R, multiset resolving
  Vertex added = 0;               // R + {added} is not
};

// First (R, u) in lexicographic subset order with R multiset resolving and
// R + {u} not; shows that supersets of resolving sets cannot be assumed to resolve.
inline std::optional<NonMonotoneWitness> find_nonmonotone_superset(const Graph& g, const SolverOptions& opt = {}) {
  detail::check_budget(g, opt);
  const detail::SmallGraphOracle oracle(g);
  const std::size_t n = g.order();
  for (std::size_t s = 1; s < n; ++s) {
    std::vector<Vertex> subset;
    detail::unrank_combination(n, s, 0, subset);
    do {
      if (!oracle.resolves(ResolvingKind::multiset, subset)) continue;
      for (Vertex u = 0; u < n; ++u) {
        if (std::find(subset.begin(), subset.end(), u) != subset.end()) continue;
        auto bigger = subset;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), u), u);
        if (!oracle.resolves(ResolvingKind::multiset, bigger)) return NonMonotoneWitness{subset, u};
      }
    } while (detail::next_combination(n, subset));
  }
  return std::nullopt;
}

}  // namespace msmd
