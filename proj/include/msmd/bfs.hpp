#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "msmd/common.hpp"
#include "msmd/graph.hpp"
#include "msmd/parallel.hpp"

namespace msmd {

// Reusable multi-source BFS scratch space. `run` leaves dist[w] = d(sources, w)
// (kUnreachable beyond max_depth or in other components) and `order` holding
// the reached vertices in nondecreasing distance.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(std::size_t n = 0) : dist_(n, kUnreachable) {}

  void run(const Graph& g, std::span<const Vertex> sources, Dist max_depth = kUnreachable) {
    if (dist_.size() != g.order()) dist_.assign(g.order(), kUnreachable);
    for (Vertex w : order_) dist_[w] = kUnreachable;
    order_.clear();
    for (Vertex s : sources) {
      if (dist_[s] == kUnreachable) {
        dist_[s] = 0;
        order_.push_back(s);
      }
    }
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const Vertex u = order_[head];
      const Dist du = dist_[u];
      if (du >= max_depth) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist_[w] == kUnreachable) {
          dist_[w] = du + 1;
          order_.push_back(w);
        }
      }
    }
  }

  void run(const Graph& g, Vertex source, Dist max_depth = kUnreachable) {
    run(g, std::span<const Vertex>(&source, 1), max_depth);
  }

  std::span<const Dist> dist() const { return dist_; }
  std::span<const Vertex> order() const { return order_; }
  Dist eccentricity() const { return order_.empty() ? 0 : dist_[order_.back()]; }

 private:
  std::vector<Dist> dist_;
  std::vector<Vertex> order_;
};

// BFS layering from a source set V'. Layer k is S_k(V') read as the vertices
// at distance exactly k from the set; the ball N_k(V') is layers 0..k.
class SphereTable {
 public:
  SphereTable(std::vector<Vertex> sources, std::vector<Dist> dist, std::vector<Vertex> order)
      : sources_(std::move(sources)), dist_(std::move(dist)), order_(std::move(order)) {
    layer_begin_.push_back(0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      while (dist_[order_[i]] + 1 > layer_begin_.size()) layer_begin_.push_back(i);
    }
    layer_begin_.push_back(order_.size());
  }

  std::span<const Vertex> sources() const { return sources_; }
  Dist distance(Vertex w) const { return dist_[w]; }
  std::span<const Dist> distances() const { return dist_; }

  // Number of non-empty layers, i.e. eccentricity of the source set plus one.
  std::size_t layer_count() const { return layer_begin_.size() - 1; }

  std::span<const Vertex> sphere(std::size_t k) const {
    if (k >= layer_count()) return {};
    return std::span<const Vertex>(order_).subspan(layer_begin_[k], layer_begin_[k + 1] - layer_begin_[k]);
  }
  std::span<const Vertex> ball(std::size_t k) const {
    const std::size_t end = layer_begin_[std::min(k + 1, layer_count())];
    return std::span<const Vertex>(order_).first(end);
  }
  std::size_t sphere_size(std::size_t k) const { return sphere(k).size(); }
  std::size_t ball_size(std::size_t k) const { return ball(k).size(); }

  std::size_t reachable_count() const { return order_.size(); }
  std::size_t unreachable_count() const { return dist_.size() - order_.size(); }

 private:
  std::vector<Vertex> sources_;
  std::vector<Dist> dist_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> layer_begin_;
};

inline SphereTable bfs_spheres(const Graph& g, std::span<const Vertex> sources) {
  if (sources.empty()) throw InputError("bfs_spheres: source list is empty");
  for (Vertex s : sources) {
    if (!g.contains(s)) throw InputError("bfs_spheres: source " + std::to_string(s) + " out of range");
  }
  BfsWorkspace ws(g.order());
  ws.run(g, sources);
  return SphereTable({sources.begin(), sources.end()},
                     {ws.dist().begin(), ws.dist().end()},
                     {ws.order().begin(), ws.order().end()});
}

inline SphereTable bfs_spheres(const Graph& g, std::initializer_list<Vertex> sources) {
  return bfs_spheres(g, std::span<const Vertex>(sources.begin(), sources.size()));
}

inline bool is_connected(const Graph& g) {
  if (g.order() <= 1) return true;
  BfsWorkspace ws(g.order());
  ws.run(g, Vertex{0});
  return ws.order().size() == g.order();
}

struct DiameterInfo {
  Dist diameter = 0;      // kUnreachable iff disconnected
  Dist max_finite = 0;    // largest finite distance between any pair
  bool connected() const { return diameter != kUnreachable; }
};

// Exact diameter by BFS from every vertex.
inline DiameterInfo diameter_info(const Graph& g, unsigned threads = 0) {
  const std::size_t n = g.order();
  if (n == 0) return {};
  const auto bounds = chunk_bounds(n, resolve_threads(threads) * 4);
  const std::size_t chunks = bounds.size() - 1;
  std::vector<Dist> ecc(chunks, 0);
  std::vector<char> partial(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    BfsWorkspace ws(n);
    for (std::size_t v = bounds[c]; v < bounds[c + 1]; ++v) {
      ws.run(g, Vertex(v));
      ecc[c] = std::max(ecc[c], ws.eccentricity());
      if (ws.order().size() != n) partial[c] = 1;
    }
  });
  DiameterInfo info;
  info.max_finite = *std::max_element(ecc.begin(), ecc.end());
  const bool disconnected = std::any_of(partial.begin(), partial.end(), [](char p) { return p != 0; });
  info.diameter = disconnected ? kUnreachable : info.max_finite;
  return info;
}

// Exact diameter; kUnreachable iff g is disconnected.
inline Dist diameter(const Graph& g, unsigned threads = 0) { return diameter_info(g, threads).diameter; }

// Finite-n proxy for the G(n,p) diameter: the smallest i with
// d^i >= n (2 ln n + slack). Equality counts as reached.
inline int predicted_diameter(double n, double d, double slack = 0.0) {
  if (!(d > 1.0)) throw InputError("predicted_diameter: average degree must exceed 1");
  if (!(n >= 2.0)) throw InputError("predicted_diameter: n must be at least 2");
  if (!(slack >= 0.0)) throw InputError("predicted_diameter: slack must be non-negative");
  const double threshold = n * (2.0 * std::log(n) + slack);
  int i = 1;
  for (double power = d; power < threshold; power *= d) ++i;
  return i;
}

// All-pairs distance table for small graphs.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g, unsigned threads = 0) : n_(g.order()), d_(n_ * n_, kUnreachable) {
    parallel_for(n_, threads, [&](std::size_t v) {
      BfsWorkspace ws(n_);
      ws.run(g, Vertex(v));
      std::copy(ws.dist().begin(), ws.dist().end(), d_.begin() + static_cast<std::ptrdiff_t>(v * n_));
    });
    for (Dist x : d_) {
      if (x == kUnreachable) {
        connected_ = false;
      } else {
        max_finite_ = std::max(max_finite_, x);
      }
    }
  }

  std::size_t order() const { return n_; }
  Dist operator()(Vertex u, Vertex v) const { return d_[std::size_t(u) * n_ + v]; }
  std::span<const Dist> row(Vertex u) const { return std::span<const Dist>(d_).subspan(std::size_t(u) * n_, n_); }
  bool connected() const { return connected_; }
  Dist max_finite() const { return max_finite_; }
  Dist diameter() const { return connected_ ? max_finite_ : kUnreachable; }
  DiameterInfo info() const { return {diameter(), max_finite_}; }

 private:
  std::size_t n_;
  std::vector<Dist> d_;
  bool connected_ = true;
  Dist max_finite_ = 0;
};

}  // namespace msmd
