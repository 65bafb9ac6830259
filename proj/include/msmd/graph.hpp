#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msmd/common.hpp"

namespace msmd {

struct Edge {
  Vertex u;
  Vertex v;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph on vertices 0..n-1, stored as CSR
// adjacency with sorted neighbor lists. Safe to share read-only across threads.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from unordered vertex pairs. Pairs may be given in either
  // orientation; self-loops, duplicates and out-of-range labels are rejected.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    if (n > static_cast<std::size_t>(kUnreachable)) throw InputError("vertex count too large");
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has a label outside [0," + std::to_string(n) + ")");
      }
      if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw InputError("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    }
    return Graph(n, std::move(edges));
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }

  // Edges with u < v in lexicographic order.
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // 2|E|/n, the measured average degree (0 for the empty vertex set).
  double average_degree() const {
    return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
  }

  bool contains(Vertex v) const { return v < n_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  Graph(std::size_t n, std::vector<Edge> sorted_edges) : n_(n), edges_(std::move(sorted_edges)) {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so each list receives its smaller neighbours (as v)
    // before its larger ones (as u); a final sort keeps this robust.
    for (const auto& e : edges_) {
      adjacency_[cursor[e.u]++] = e.v;
      adjacency_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n_; ++v) {
      std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

// Small named families used throughout the tests and the CLI.
namespace families {

inline Graph empty(std::size_t n) { return Graph::from_edges(n, {}); }

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({Vertex(i), Vertex(i + 1)});
  return Graph::from_edges(n, std::move(e));
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({Vertex(i), Vertex((i + 1) % n)});
  return Graph::from_edges(n, std::move(e));
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({Vertex(i), Vertex(j)});
  return Graph::from_edges(n, std::move(e));
}

// K_{1,leaves}; vertex 0 is the centre.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, Vertex(i)});
  return Graph::from_edges(leaves + 1, std::move(e));
}

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, Vertex((i + 1) % 5)});
    e.push_back({Vertex(5 + i), Vertex(5 + (i + 2) % 5)});
    e.push_back({i, Vertex(i + 5)});
  }
  return Graph::from_edges(10, std::move(e));
}

}  // namespace families

}  // namespace msmd
