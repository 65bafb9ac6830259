#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "msmd/graph.hpp"
#include "msmd/parallel.hpp"
#include "msmd/rng.hpp"

namespace msmd {

// Parameters of a binomial random graph G(n, p). The density is either an edge
// probability or an exponent x with p = n^x / (n - 1), i.e. expected degree n^x.
struct RandomGraphSpec {
  std::size_t n = 0;
  double p = 0.0;
  std::optional<double> exponent;
  std::uint64_t seed = 0;

  static RandomGraphSpec with_probability(std::size_t n, double p, std::uint64_t seed) {
    RandomGraphSpec s{n, p, std::nullopt, seed};
    s.validate();
    return s;
  }

  static RandomGraphSpec with_exponent(std::size_t n, double x, std::uint64_t seed) {
    if (!(x > 0.0 && x < 1.0)) throw InputError("density exponent must lie in (0,1)");
    if (n < 2) throw InputError("density exponent needs n >= 2");
    RandomGraphSpec s{n, std::pow(static_cast<double>(n), x) / static_cast<double>(n - 1), x, seed};
    s.validate();
    return s;
  }

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0,1]");
    if (exponent && !(*exponent > 0.0 && *exponent < 1.0)) throw InputError("density exponent must lie in (0,1)");
  }
};

// Samples G(n,p) by geometric skipping within each row u (pairs (u,v), v > u).
// Row u draws from its own substream derive_seed(seed, u), so the edge set is
// a function of the spec alone, whatever the thread count.
inline Graph generate_gnp(const RandomGraphSpec& spec, unsigned threads = 0) {
  spec.validate();
  const std::size_t n = spec.n;
  if (n < 2 || spec.p <= 0.0) return Graph::from_edges(n, {});

  const auto bounds = chunk_bounds(n - 1, resolve_threads(threads) * 8);
  const std::size_t chunks = bounds.size() - 1;
  std::vector<std::vector<Edge>> parts(chunks);
  const double log_q = std::log1p(-spec.p);

  parallel_for(chunks, threads, [&](std::size_t c) {
    auto& out = parts[c];
    for (std::size_t u = bounds[c]; u < bounds[c + 1]; ++u) {
      const std::uint64_t candidates = n - 1 - u;
      if (spec.p >= 1.0) {
        for (std::uint64_t k = 0; k < candidates; ++k) out.push_back({Vertex(u), Vertex(u + 1 + k)});
        continue;
      }
      Rng rng(derive_seed(spec.seed, u));
      std::uint64_t pos = 0;
      for (;;) {
        const std::uint64_t skip = rng.geometric_skip(log_q);
        if (skip >= candidates - pos) break;
        pos += skip;
        out.push_back({Vertex(u), Vertex(u + 1 + pos)});
        ++pos;
      }
    }
  });

  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  edges.reserve(total);
  for (auto& part : parts) edges.insert(edges.end(), part.begin(), part.end());
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace msmd
