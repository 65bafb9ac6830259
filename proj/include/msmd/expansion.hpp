#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "msmd/asymptotics.hpp"
#include "msmd/bfs.hpp"
#include "msmd/common.hpp"
#include "msmd/graph.hpp"
#include "msmd/parallel.hpp"
#include "msmd/rng.hpp"

namespace msmd {

struct ExpansionLevel {
  std::size_t level = 0;
  std::size_t set_size = 1;   // |V'|
  bool saturated = false;     // level i*+1, compared as a fraction of n
  double predicted = 0.0;     // |V'| d^i, or n(1 - e^{-|V'|c} - |V'|d^{i*}/n) at level i*+1
  double tolerance = 0.0;     // multiplier * gamma (plus ln n / sqrt n at level i*+1)
  std::size_t samples = 0;
  std::size_t within = 0;     // samples with |deviation| <= tolerance
  std::size_t empty_layers = 0;
  double min_ratio = 0.0;     // observed / predicted
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double max_abs_deviation = 0.0;  // |ratio - 1| for levels <= i*, |observed - predicted|/n at i*+1
  std::vector<double> ratios;      // per sample, in sample order

  bool flagged() const { return within < samples; }
};

struct ExpansionReport {
  RegimeParams params;
  double multiplier = 3.0;
  double measured_degree = 0.0;
  bool partial = false;  // some sampled source set ran out of layers before level i*+1
  std::vector<ExpansionLevel> levels;  // for each i in 0..i*+1: |V'| = 1 then |V'| = 2

  const ExpansionLevel& at(std::size_t level, std::size_t set_size) const {
    for (const auto& l : levels)
      if (l.level == level && l.set_size == set_size) return l;
    throw InputError("expansion report has no entry for that level");
  }
  double max_abs_deviation() const {
    double m = 0.0;
    for (const auto& l : levels) m = std::max(m, l.max_abs_deviation);
    return m;
  }
};

// Samples `sample_size` vertices and `sample_size` vertex pairs (seeded) and
// compares their layer sizes |S_i(V')| with the typical-expansion predictions.
inline ExpansionReport audit_expansion(const Graph& g, const RegimeParams& params, std::size_t sample_size,
                                       std::uint64_t seed, double multiplier = 3.0, unsigned threads = 0) {
  const std::size_t n = g.order();
  if (n < 3) throw InputError("audit_expansion: graph too small");
  if (static_cast<std::size_t>(params.n) != n) throw InputError("audit_expansion: params.n does not match the graph");
  const double measured = g.average_degree();
  if (std::fabs(measured - params.d) > 0.1 * params.d) {
    throw InputError("audit_expansion: measured degree " + std::to_string(measured) +
                     " differs from params.d by more than 10%");
  }
  if (!is_connected(g)) throw DisconnectedGraphError("audit_expansion: graph is disconnected");
  if (sample_size == 0) throw InputError("audit_expansion: sample_size must be positive");

  const std::size_t top = static_cast<std::size_t>(params.i_star) + 1;
  const double nn = static_cast<double>(n);

  // Source sets: singletons without replacement (when possible), then distinct pairs.
  Rng rng(seed);
  std::vector<std::vector<Vertex>> sets;
  {
    std::vector<Vertex> perm(n);
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    for (std::size_t i = 0; i < sample_size; ++i) {
      if (i < n) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(perm[i], perm[j]);
        sets.push_back({perm[i]});
      } else {
        sets.push_back({Vertex(rng.below(n))});
      }
    }
    for (std::size_t i = 0; i < sample_size; ++i) {
      const Vertex u = Vertex(rng.below(n));
      Vertex v = Vertex(rng.below(n - 1));
      if (v >= u) ++v;
      sets.push_back({u, v});
    }
  }

  std::vector<std::vector<std::size_t>> layer_sizes(sets.size());
  parallel_for(sets.size(), threads, [&](std::size_t s) {
    BfsWorkspace ws(n);
    ws.run(g, sets[s], static_cast<Dist>(top));
    auto& sizes = layer_sizes[s];
    sizes.assign(top + 1, 0);
    for (Vertex w : ws.order()) ++sizes[ws.dist()[w]];
  });

  ExpansionReport rep;
  rep.params = params;
  rep.multiplier = multiplier;
  rep.measured_degree = measured;
  for (std::size_t i = 0; i <= top; ++i) {
    for (std::size_t size : {std::size_t{1}, std::size_t{2}}) {
      ExpansionLevel lvl;
      lvl.level = i;
      lvl.set_size = size;
      lvl.saturated = i == top;
      const double sz = static_cast<double>(size);
      if (lvl.saturated) {
        lvl.predicted = nn * (1.0 - std::exp(-sz * params.c) - sz * std::pow(params.d, params.i_star) / nn);
        lvl.tolerance = multiplier * (params.gamma + std::log(nn) / std::sqrt(nn));
      } else {
        lvl.predicted = sz * std::pow(params.d, static_cast<double>(i));
        lvl.tolerance = multiplier * params.gamma;
      }
      double sum = 0.0;
      bool first = true;
      for (std::size_t s = 0; s < sets.size(); ++s) {
        if (sets[s].size() != size) continue;
        const double observed = static_cast<double>(layer_sizes[s][i]);
        if (layer_sizes[s][i] == 0) ++lvl.empty_layers;
        const double ratio = lvl.predicted > 0.0 ? observed / lvl.predicted : 0.0;
        const double dev = lvl.saturated ? std::fabs(observed - lvl.predicted) / nn : std::fabs(ratio - 1.0);
        lvl.ratios.push_back(ratio);
        ++lvl.samples;
        if (dev <= lvl.tolerance) ++lvl.within;
        lvl.max_abs_deviation = std::max(lvl.max_abs_deviation, dev);
        lvl.min_ratio = first ? ratio : std::min(lvl.min_ratio, ratio);
        lvl.max_ratio = first ? ratio : std::max(lvl.max_ratio, ratio);
        first = false;
        sum += ratio;
      }
      lvl.mean_ratio = lvl.samples ? sum / static_cast<double>(lvl.samples) : 0.0;
      if (lvl.empty_layers > 0) rep.partial = true;
      rep.levels.push_back(std::move(lvl));
    }
  }
  return rep;
}

}  // namespace msmd
