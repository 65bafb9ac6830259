#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msmd/bfs.hpp"
#include "msmd/common.hpp"
#include "msmd/graph.hpp"
#include "msmd/parallel.hpp"

namespace msmd {

enum class ResolvingKind { metric, multiset, outer_multiset };

inline std::string_view to_string(ResolvingKind kind) {
  switch (kind) {
    case ResolvingKind::metric: return "metric";
    case ResolvingKind::multiset: return "multiset";
    case ResolvingKind::outer_multiset: return "outer-multiset";
  }
  return "?";
}

inline ResolvingKind parse_resolving_kind(std::string_view s) {
  if (s == "metric") return ResolvingKind::metric;
  if (s == "multiset") return ResolvingKind::multiset;
  if (s == "outer-multiset" || s == "outer") return ResolvingKind::outer_multiset;
  throw InputError("unknown resolving kind '" + std::string(s) + "'");
}

// m_R(v): entry k counts members of R at distance k from v. On a disconnected
// graph the last entry counts members in other components.
struct MultisetSignature {
  std::vector<std::uint32_t> counts;
  friend bool operator==(const MultisetSignature&, const MultisetSignature&) = default;
};

// s_R(v), indexed by the caller's ordering of R.
struct MetricSignature {
  std::vector<Dist> dists;
  friend bool operator==(const MetricSignature&, const MetricSignature&) = default;
};

// Length of a multiset signature: diam + 1, plus one infinity slot when disconnected.
inline std::size_t signature_width(const DiameterInfo& info) {
  return info.connected() ? std::size_t(info.diameter) + 1 : std::size_t(info.max_finite) + 2;
}

inline std::size_t signature_coordinate(Dist d, std::size_t width) {
  return d == kUnreachable ? width - 1 : std::size_t(d);
}

struct SignatureOptions {
  std::optional<std::size_t> width;  // computed from the exact diameter when absent
  unsigned threads = 0;
};

namespace detail {

inline void validate_sensor_set(const Graph& g, std::span<const Vertex> R) {
  if (R.empty()) throw InputError("vertex set R is empty");
  std::vector<Vertex> sorted(R.begin(), R.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= g.order()) throw InputError("vertex " + std::to_string(sorted.back()) + " out of range");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("vertex set R contains a repeated vertex");
  }
}

inline std::uint64_t hash_row(std::span<const std::uint32_t> row) {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ row.size();
  for (std::uint32_t x : row) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// First pair (w, v), w < v in scan order, among `candidates` with equal rows.
// Rows are bucketed by hash and every hash hit is confirmed elementwise.
template <class RowOf>
std::optional<std::pair<Vertex, Vertex>> find_collision(std::span<const Vertex> candidates, RowOf&& row_of) {
  std::unordered_map<std::uint64_t, std::vector<Vertex>> buckets;
  buckets.reserve(candidates.size());
  for (Vertex v : candidates) {
    const auto row = row_of(v);
    auto& bucket = buckets[hash_row(row)];
    for (Vertex w : bucket) {
      const auto other = row_of(w);
      if (std::equal(row.begin(), row.end(), other.begin(), other.end())) return std::pair{w, v};
    }
    bucket.push_back(v);
  }
  return std::nullopt;
}

}  // namespace detail

// Row-major n x width table of multiset signatures.
class SignatureTable {
 public:
  SignatureTable(std::size_t n, std::size_t width) : n_(n), width_(width), counts_(n * width, 0) {}

  std::size_t order() const { return n_; }
  std::size_t width() const { return width_; }
  std::span<const std::uint32_t> row(Vertex v) const {
    return std::span<const std::uint32_t>(counts_).subspan(std::size_t(v) * width_, width_);
  }
  std::span<std::uint32_t> row(Vertex v) { return std::span<std::uint32_t>(counts_).subspan(std::size_t(v) * width_, width_); }
  MultisetSignature signature(Vertex v) const { return {{row(v).begin(), row(v).end()}}; }

 private:
  std::size_t n_;
  std::size_t width_;
  std::vector<std::uint32_t> counts_;
};

inline std::size_t resolve_width(const Graph& g, const SignatureOptions& opt) {
  return opt.width ? *opt.width : signature_width(diameter_info(g, opt.threads));
}

// m_R(v) for every v, via one BFS per member of R.
inline SignatureTable multiset_signatures(const Graph& g, std::span<const Vertex> R, const SignatureOptions& opt = {}) {
  detail::validate_sensor_set(g, R);
  const std::size_t n = g.order();
  const std::size_t width = resolve_width(g, opt);
  const auto bounds = chunk_bounds(R.size(), resolve_threads(opt.threads));
  const std::size_t chunks = bounds.size() - 1;
  std::vector<SignatureTable> partial(chunks, SignatureTable(n, width));
  parallel_for(chunks, opt.threads, [&](std::size_t c) {
    BfsWorkspace ws(n);
    auto& table = partial[c];
    for (std::size_t i = bounds[c]; i < bounds[c + 1]; ++i) {
      ws.run(g, R[i]);
      const auto dist = ws.dist();
      for (std::size_t v = 0; v < n; ++v) {
        const std::size_t k = signature_coordinate(dist[v], width);
        if (k >= width) throw InputError("signature width smaller than graph distances");
        ++table.row(Vertex(v))[k];
      }
    }
  });
  SignatureTable total = std::move(partial.front());
  for (std::size_t c = 1; c < chunks; ++c) {
    for (std::size_t v = 0; v < n; ++v) {
      auto dst = total.row(Vertex(v));
      const auto src = partial[c].row(Vertex(v));
      for (std::size_t k = 0; k < width; ++k) dst[k] += src[k];
    }
  }
  return total;
}

// m_R(v) for a single vertex, by one BFS from v.
inline MultisetSignature multiset_signature(const Graph& g, std::span<const Vertex> R, Vertex v,
                                            const SignatureOptions& opt = {}) {
  detail::validate_sensor_set(g, R);
  if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
  const std::size_t width = resolve_width(g, opt);
  BfsWorkspace ws(g.order());
  ws.run(g, v);
  MultisetSignature sig{std::vector<std::uint32_t>(width, 0)};
  for (Vertex r : R) ++sig.counts.at(signature_coordinate(ws.dist()[r], width));
  return sig;
}

// Row-major n x |R| table of metric signatures.
class DistanceProfile {
 public:
  DistanceProfile(std::size_t n, std::size_t k) : n_(n), k_(k), d_(n * k, kUnreachable) {}
  std::size_t order() const { return n_; }
  std::size_t width() const { return k_; }
  std::span<const Dist> row(Vertex v) const { return std::span<const Dist>(d_).subspan(std::size_t(v) * k_, k_); }
  Dist& at(Vertex v, std::size_t i) { return d_[std::size_t(v) * k_ + i]; }
  MetricSignature signature(Vertex v) const { return {{row(v).begin(), row(v).end()}}; }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<Dist> d_;
};

inline DistanceProfile metric_signatures(const Graph& g, std::span<const Vertex> R, unsigned threads = 0) {
  detail::validate_sensor_set(g, R);
  const std::size_t n = g.order();
  DistanceProfile profile(n, R.size());
  parallel_for(R.size(), threads, [&](std::size_t i) {
    BfsWorkspace ws(n);
    ws.run(g, R[i]);
    // Column i is written only by this task.
    for (std::size_t v = 0; v < n; ++v) profile.at(Vertex(v), i) = ws.dist()[v];
  });
  return profile;
}

inline MetricSignature metric_signature(const Graph& g, std::span<const Vertex> R, Vertex v) {
  detail::validate_sensor_set(g, R);
  if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
  BfsWorkspace ws(g.order());
  ws.run(g, v);
  MetricSignature sig;
  for (Vertex r : R) sig.dists.push_back(ws.dist()[r]);
  return sig;
}

struct ResolvingVerdict {
  ResolvingKind kind = ResolvingKind::multiset;
  bool resolving = false;
  std::optional<std::pair<Vertex, Vertex>> witness;
  std::vector<std::uint32_t> witness_signature;  // the shared signature of the witness pair
};

// Checks whether R resolves g under `kind`. The witness, when present, is the
// first colliding pair in increasing vertex order of the later vertex.
inline ResolvingVerdict verify_resolving(const Graph& g, std::span<const Vertex> R, ResolvingKind kind,
                                         const SignatureOptions& opt = {}) {
  detail::validate_sensor_set(g, R);
  const std::size_t n = g.order();
  std::vector<Vertex> candidates;
  candidates.reserve(n);
  if (kind == ResolvingKind::outer_multiset) {
    std::vector<char> in_r(n, 0);
    for (Vertex r : R) in_r[r] = 1;
    for (Vertex v = 0; v < n; ++v)
      if (!in_r[v]) candidates.push_back(v);
  } else {
    for (Vertex v = 0; v < n; ++v) candidates.push_back(v);
  }

  ResolvingVerdict verdict;
  verdict.kind = kind;
  if (kind == ResolvingKind::metric) {
    const auto profile = metric_signatures(g, R, opt.threads);
    verdict.witness = detail::find_collision(candidates, [&](Vertex v) { return profile.row(v); });
    if (verdict.witness) {
      const auto row = profile.row(verdict.witness->first);
      verdict.witness_signature.assign(row.begin(), row.end());
    }
  } else {
    const auto table = multiset_signatures(g, R, opt);
    verdict.witness = detail::find_collision(candidates, [&](Vertex v) { return table.row(v); });
    if (verdict.witness) {
      const auto row = table.row(verdict.witness->first);
      verdict.witness_signature.assign(row.begin(), row.end());
    }
  }
  verdict.resolving = !verdict.witness.has_value();
  return verdict;
}

// Independent confirmation that R is multiset resolving: signatures are sorted
// and adjacent rows compared, sharing no code with the hashing path.
inline bool confirm_multiset_resolving(const Graph& g, std::span<const Vertex> R, const SignatureOptions& opt = {}) {
  const auto table = multiset_signatures(g, R, opt);
  std::vector<Vertex> order(g.order());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  auto less = [&](Vertex a, Vertex b) {
    const auto ra = table.row(a);
    const auto rb = table.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!less(order[i - 1], order[i])) return false;
  }
  return true;
}

struct DistortionSummary {
  std::size_t pairs = 0;
  double mean_abs = 0.0;  // mean |Euclid(row_v,row_w) - d(v,w)|
  double rms = 0.0;
  double max_abs = 0.0;
  std::pair<Vertex, Vertex> worst{0, 0};
};

struct Embedding {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;
  DistortionSummary distortion;

  std::span<const double> row(Vertex v) const { return std::span<const double>(data).subspan(std::size_t(v) * cols, cols); }
};

namespace detail {

inline void summarize_distortion(Embedding& emb, const DistanceMatrix& dm) {
  auto& s = emb.distortion;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (Vertex v = 0; v < emb.rows; ++v) {
    for (Vertex w = v + 1; w < emb.rows; ++w) {
      double e = 0.0;
      const auto a = emb.row(v);
      const auto b = emb.row(w);
      for (std::size_t k = 0; k < emb.cols; ++k) e += (a[k] - b[k]) * (a[k] - b[k]);
      const double err = std::fabs(std::sqrt(e) - static_cast<double>(dm(v, w)));
      sum += err;
      sum_sq += err * err;
      if (err > s.max_abs || s.pairs == 0) {
        s.max_abs = err;
        s.worst = {v, w};
      }
      ++s.pairs;
    }
  }
  if (s.pairs > 0) {
    s.mean_abs = sum / static_cast<double>(s.pairs);
    s.rms = std::sqrt(sum_sq / static_cast<double>(s.pairs));
  }
}

}  // namespace detail

// Maps v to m_R(v) in R^{diam+1}.
inline Embedding embed_multiset(const Graph& g, std::span<const Vertex> R, unsigned threads = 0) {
  detail::validate_sensor_set(g, R);
  const DistanceMatrix dm(g, threads);
  if (!dm.connected()) throw DisconnectedGraphError("embed_multiset: graph is disconnected");
  const auto table = multiset_signatures(g, R, {signature_width(dm.info()), threads});
  Embedding emb{g.order(), table.width(), {}, {}};
  emb.data.reserve(emb.rows * emb.cols);
  for (Vertex v = 0; v < emb.rows; ++v)
    for (auto c : table.row(v)) emb.data.push_back(static_cast<double>(c));
  detail::summarize_distortion(emb, dm);
  return emb;
}

// Maps v to s_R(v) in R^{|R|}.
inline Embedding embed_metric(const Graph& g, std::span<const Vertex> R, unsigned threads = 0) {
  detail::validate_sensor_set(g, R);
  const DistanceMatrix dm(g, threads);
  if (!dm.connected()) throw DisconnectedGraphError("embed_metric: graph is disconnected");
  Embedding emb{g.order(), R.size(), {}, {}};
  emb.data.reserve(emb.rows * emb.cols);
  for (Vertex v = 0; v < emb.rows; ++v)
    for (Vertex r : R) emb.data.push_back(static_cast<double>(dm(v, r)));
  detail::summarize_distortion(emb, dm);
  return emb;
}

}  // namespace msmd
