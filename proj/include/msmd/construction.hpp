#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msmd/asymptotics.hpp"
#include "msmd/bfs.hpp"
#include "msmd/common.hpp"
#include "msmd/graph.hpp"
#include "msmd/parallel.hpp"
#include "msmd/rng.hpp"
#include "msmd/signature.hpp"

namespace msmd {

// Bernoulli candidate sets: each vertex joins R independently with probability r/n.
struct CandidateSpec {
  double r = 1.0;            // expected size of R
  double growth = 2.0;       // r multiplier after a failed round
  std::size_t max_rounds = 12;
  std::uint64_t seed = 0;

  void validate(std::size_t n) const {
    if (!(r > 0.0)) throw InputError("candidate spec: r must be positive");
    if (r > static_cast<double>(n)) throw InputError("candidate spec: r exceeds n");
    if (!(growth > 1.0)) throw InputError("candidate spec: growth must exceed 1");
  }
};

// Warm start for r: n^{y4(x)} when x <= 1/8 is known, otherwise sqrt(n).
inline double default_initial_r(std::size_t n, std::optional<double> x = std::nullopt) {
  const double nn = static_cast<double>(n);
  if (x && *x > 0.0 && *x <= kLevelFourMaxX + kReciprocalGuard) return std::min(nn, std::pow(nn, y4(*x)));
  return std::sqrt(nn);
}

// One Bernoulli(r/n) draw per vertex in label order from a single stream
// seeded by `seed`. May return the empty set.
inline std::vector<Vertex> sample_candidate(const Graph& g, const CandidateSpec& spec) {
  spec.validate(g.order());
  const double q = spec.r / static_cast<double>(g.order());
  Rng rng(spec.seed);
  std::vector<Vertex> R;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (rng.bernoulli(q)) R.push_back(v);
  }
  return R;
}

// Uniform subset of exactly `size` vertices (partial Fisher-Yates on one
// seeded stream), returned sorted.
inline std::vector<Vertex> sample_fixed_size(std::size_t n, std::size_t size, std::uint64_t seed) {
  if (size == 0 || size > n) throw InputError("sample_fixed_size: size must lie in [1, n]");
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
  perm.resize(size);
  std::sort(perm.begin(), perm.end());
  return perm;
}

struct RoundRecord {
  std::size_t round = 0;
  double r = 0.0;
  std::size_t sample_size = 0;
  bool resolving = false;
  std::optional<std::pair<Vertex, Vertex>> witness;  // absent for resolving or empty samples
};

struct ConstructionResult {
  std::optional<std::vector<Vertex>> resolving_set;  // present on success, re-verified
  std::vector<RoundRecord> rounds;
  bool saturated = false;  // stopped early: r reached n and R = V failed
  std::optional<std::pair<Vertex, Vertex>> last_witness;

  bool succeeded() const { return resolving_set.has_value(); }
  std::size_t rounds_used() const { return rounds.size(); }
};

// Sample R with inclusion probability r/n, verify it as a multiset resolving
// set, and multiply r by `growth` (capped at n) after every failure. Round i
// draws from derive_seed(spec.seed, i). A failure report never claims that no
// resolving set exists.
inline ConstructionResult construct_resolving(const Graph& g, const CandidateSpec& spec, unsigned threads = 0,
                                              std::optional<std::size_t> width = std::nullopt) {
  spec.validate(g.order());
  const auto info = diameter_info(g, threads);
  if (!info.connected()) throw DisconnectedGraphError("construct_resolving: graph is disconnected");
  const SignatureOptions sig{width ? width : std::optional<std::size_t>(signature_width(info)), threads};
  const double n = static_cast<double>(g.order());

  ConstructionResult result;
  double r = spec.r;
  for (std::size_t round = 0; round < spec.max_rounds; ++round) {
    CandidateSpec here = spec;
    here.r = std::min(r, n);
    here.seed = derive_seed(spec.seed, round);
    auto R = sample_candidate(g, here);

    RoundRecord rec{round, here.r, R.size(), false, std::nullopt};
    if (!R.empty()) {
      const auto verdict = verify_resolving(g, R, ResolvingKind::multiset, sig);
      rec.resolving = verdict.resolving;
      rec.witness = verdict.witness;
      if (verdict.witness) result.last_witness = verdict.witness;
    }
    result.rounds.push_back(rec);
    if (rec.resolving) {
      if (!confirm_multiset_resolving(g, R, sig)) {
        throw std::logic_error("construct_resolving: returned set failed independent re-verification");
      }
      result.resolving_set = std::move(R);
      return result;
    }
    if (here.r >= n) {
      // R = V with certainty; every later round would repeat this outcome.
      result.saturated = true;
      return result;
    }
    r *= spec.growth;
  }
  return result;
}

struct FailureEstimate {
  std::size_t trials = 0;
  std::size_t failures = 0;  // empty samples count as failures
  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials); }
};

// Monte Carlo estimate of Pr(a Bernoulli(r/n) set fails to be multiset
// resolving). Trial t draws from derive_seed(seed, t); trials run in parallel.
inline FailureEstimate estimate_failure_rate(const Graph& g, double r, std::size_t trials, std::uint64_t seed,
                                             unsigned threads = 0) {
  if (trials == 0) throw InputError("estimate_failure_rate: trials must be at least 1");
  const auto info = diameter_info(g, threads);
  const SignatureOptions sig{signature_width(info), 1};
  CandidateSpec spec;
  spec.r = r;
  spec.validate(g.order());
  std::vector<char> failed(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    CandidateSpec here = spec;
    here.seed = derive_seed(seed, t);
    const auto R = sample_candidate(g, here);
    failed[t] = R.empty() || !verify_resolving(g, R, ResolvingKind::multiset, sig).resolving;
  });
  FailureEstimate est;
  est.trials = trials;
  est.failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  return est;
}

// Row-major n x (k+1) table: entry (v, i) = |N_i^R(v)|, the number of members
// of R within distance i of v.
inline std::vector<std::uint32_t> sensor_ball_counts(const Graph& g, std::span<const Vertex> R, std::size_t k,
                                                     unsigned threads = 0) {
  detail::validate_sensor_set(g, R);
  const std::size_t n = g.order();
  const std::size_t w = k + 1;
  const auto bounds = chunk_bounds(R.size(), resolve_threads(threads));
  const std::size_t chunks = bounds.size() - 1;
  std::vector<std::vector<std::uint32_t>> partial(chunks, std::vector<std::uint32_t>(n * w, 0));
  parallel_for(chunks, threads, [&](std::size_t c) {
    BfsWorkspace ws(n);
    for (std::size_t j = bounds[c]; j < bounds[c + 1]; ++j) {
      ws.run(g, R[j], static_cast<Dist>(k));
      for (Vertex v : ws.order()) ++partial[c][std::size_t(v) * w + ws.dist()[v]];
    }
  });
  auto out = std::move(partial.front());
  for (std::size_t c = 1; c < chunks; ++c)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += partial[c][i];
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 1; i < w; ++i) out[v * w + i] += out[v * w + i - 1];
  return out;
}

// Row-major n x (k+1) table: entry (v, i) = |N_i(v)|.
inline std::vector<std::uint32_t> ball_sizes(const Graph& g, std::size_t k, unsigned threads = 0) {
  const std::size_t n = g.order();
  const std::size_t w = k + 1;
  std::vector<std::uint32_t> out(n * w, 0);
  const auto bounds = chunk_bounds(n, resolve_threads(threads) * 4);
  parallel_for(bounds.size() - 1, threads, [&](std::size_t c) {
    BfsWorkspace ws(n);
    for (std::size_t v = bounds[c]; v < bounds[c + 1]; ++v) {
      ws.run(g, Vertex(v), static_cast<Dist>(k));
      auto* row = out.data() + v * w;
      for (Vertex u : ws.order()) ++row[ws.dist()[u]];
      for (std::size_t i = 1; i < w; ++i) row[i] += row[i - 1];
    }
  });
  return out;
}

struct CensusLevel {
  std::size_t level = 0;
  std::size_t atypical = 0;         // |A_i^R|
  std::size_t typical = 0;          // n - |A_i^R|
  std::uint64_t allowed_coords = 1; // max over typical v of max{ceil(2(k+1)|N_i(v)||R|/n), 1}
  std::uint64_t atypical_sensor_pairs = 0;  // sum over v in A_i^R of |N_i^R(v)|
  std::uint64_t sensor_ball_total = 0;      // sum over r in R of |N_i(r)|
};

struct TypicalityReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t sensors = 0;
  std::vector<CensusLevel> levels;
  std::size_t typical = 0;             // typical at every level 0..k
  double signature_space_bound = 1.0;  // product of allowed_coords
  bool signatures_determined = false;  // diam <= k + 1: coordinates 0..k fix m_R(v)
  bool collision_forced = false;       // determined and bound < typical

  // Double counting: each (sensor, atypical vertex) pair within distance i is
  // counted once from each side.
  bool double_count_holds() const {
    return std::all_of(levels.begin(), levels.end(),
                       [](const CensusLevel& l) { return l.atypical_sensor_pairs <= l.sensor_ball_total; });
  }
};

// Classifies each vertex as i-atypical when |N_i^R(v)| >= max{2(k+1)|N_i(v)||R|/n, 1}
// (real-valued comparison) and bounds the number of signatures available to
// typical vertices.
inline TypicalityReport typicality_census(const Graph& g, std::span<const Vertex> R, std::size_t k,
                                          unsigned threads = 0) {
  detail::validate_sensor_set(g, R);
  const auto info = diameter_info(g, threads);
  if (!info.connected()) throw DisconnectedGraphError("typicality_census: graph is disconnected");
  if (k > info.diameter) {
    throw InputError("typicality_census: k = " + std::to_string(k) + " exceeds the diameter " +
                     std::to_string(info.diameter));
  }
  const std::size_t n = g.order();
  const std::size_t w = k + 1;
  const auto balls = ball_sizes(g, k, threads);
  const auto sensors = sensor_ball_counts(g, R, k, threads);
  const double scale = 2.0 * static_cast<double>(k + 1) * static_cast<double>(R.size()) / static_cast<double>(n);

  TypicalityReport rep;
  rep.k = k;
  rep.n = n;
  rep.sensors = R.size();
  rep.levels.resize(w);
  std::vector<char> typical(n, 1);
  for (std::size_t i = 0; i < w; ++i) {
    auto& lvl = rep.levels[i];
    lvl.level = i;
    for (Vertex r : R) lvl.sensor_ball_total += balls[std::size_t(r) * w + i];
    for (std::size_t v = 0; v < n; ++v) {
      const double threshold = std::max(scale * static_cast<double>(balls[v * w + i]), 1.0);
      const std::uint32_t count = sensors[v * w + i];
      if (static_cast<double>(count) >= threshold) {
        ++lvl.atypical;
        lvl.atypical_sensor_pairs += count;
        typical[v] = 0;
      } else {
        lvl.allowed_coords = std::max<std::uint64_t>(lvl.allowed_coords, static_cast<std::uint64_t>(std::ceil(threshold)));
      }
    }
    lvl.typical = n - lvl.atypical;
  }
  rep.typical = static_cast<std::size_t>(std::count(typical.begin(), typical.end(), 1));
  for (const auto& lvl : rep.levels) rep.signature_space_bound *= static_cast<double>(lvl.allowed_coords);
  rep.signatures_determined = info.diameter <= k + 1;
  rep.collision_forced = rep.signatures_determined && rep.signature_space_bound < static_cast<double>(rep.typical);
  return rep;
}

}  // namespace msmd
