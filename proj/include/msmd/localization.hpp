#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "msmd/bfs.hpp"
#include "msmd/common.hpp"
#include "msmd/graph.hpp"
#include "msmd/signature.hpp"

namespace msmd {

// N_t for t = 0..diam: number of sensors first infected at time t.
struct Observation {
  std::vector<std::uint32_t> counts;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// Synchronous spread from v0: at each step every uninfected neighbour of an
// infected vertex becomes infected. Returns the infection time of each vertex.
inline std::vector<Dist> spread(const Graph& g, Vertex v0) {
  if (!g.contains(v0)) throw InputError("spread: source " + std::to_string(v0) + " out of range");
  std::vector<Dist> time(g.order(), kUnreachable);
  std::vector<Vertex> frontier{v0};
  time[v0] = 0;
  std::size_t infected = 1;
  for (Dist t = 1; !frontier.empty(); ++t) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex w : g.neighbors(u)) {
        if (time[w] == kUnreachable) {
          time[w] = t;
          next.push_back(w);
        }
      }
    }
    infected += next.size();
    frontier = std::move(next);
  }
  if (infected != g.order()) throw DisconnectedGraphError("spread: graph is disconnected");
  return time;
}

// Sensor readings for a source v0, one count per time 0..horizon.
// The horizon defaults to diam(g).
inline Observation observe(const Graph& g, std::span<const Vertex> R, Vertex v0,
                           std::optional<std::size_t> horizon = std::nullopt) {
  detail::validate_sensor_set(g, R);
  const auto time = spread(g, v0);
  const std::size_t last = horizon ? *horizon : std::size_t(diameter(g));
  Observation obs{std::vector<std::uint32_t>(last + 1, 0)};
  for (Vertex r : R) ++obs.counts.at(time[r]);
  return obs;
}

struct Identification {
  std::vector<Vertex> candidates;  // every v with m_R(v) equal to the observation
  bool consistent = true;          // false when the counts cannot come from any source
};

// Prebuilt signature -> sources map for repeated queries on one (g, R).
class SignatureIndex {
 public:
  SignatureIndex(const Graph& g, std::span<const Vertex> R, unsigned threads = 0) : sensors_(R.size()) {
    detail::validate_sensor_set(g, R);
    const auto info = diameter_info(g, threads);
    if (!info.connected()) throw DisconnectedGraphError("localization requires a connected graph");
    width_ = signature_width(info);
    const auto table = multiset_signatures(g, R, {width_, threads});
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto row = table.row(v);
      index_[std::vector<std::uint32_t>(row.begin(), row.end())].push_back(v);
    }
  }

  std::size_t width() const { return width_; }

  Identification identify(const Observation& obs) const {
    if (obs.counts.size() != width_) {
      throw InputError("identify: observation has " + std::to_string(obs.counts.size()) + " entries, expected " +
                       std::to_string(width_));
    }
    Identification id;
    const auto total = std::accumulate(obs.counts.begin(), obs.counts.end(), std::uint64_t{0});
    if (total != sensors_) {
      id.consistent = false;
      return id;
    }
    if (auto it = index_.find(obs.counts); it != index_.end()) id.candidates = it->second;
    id.consistent = !id.candidates.empty();
    return id;
  }

 private:
  std::size_t sensors_;
  std::size_t width_ = 0;
  std::map<std::vector<std::uint32_t>, std::vector<Vertex>> index_;
};

// Scans every vertex for a signature matching the observation.
inline Identification identify(const Graph& g, std::span<const Vertex> R, const Observation& obs) {
  detail::validate_sensor_set(g, R);
  const auto info = diameter_info(g);
  if (!info.connected()) throw DisconnectedGraphError("localization requires a connected graph");
  const std::size_t width = signature_width(info);
  if (obs.counts.size() != width) {
    throw InputError("identify: observation has " + std::to_string(obs.counts.size()) + " entries, expected " +
                     std::to_string(width));
  }
  Identification id;
  const auto total = std::accumulate(obs.counts.begin(), obs.counts.end(), std::uint64_t{0});
  if (total != R.size()) {
    id.consistent = false;
    return id;
  }
  const auto table = multiset_signatures(g, R, {width, 0});
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto row = table.row(v);
    if (std::equal(row.begin(), row.end(), obs.counts.begin(), obs.counts.end())) id.candidates.push_back(v);
  }
  id.consistent = !id.candidates.empty();
  return id;
}

}  // namespace msmd
