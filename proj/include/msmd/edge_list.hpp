#pragma once

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "msmd/graph.hpp"

namespace msmd {

// Text edge list: a line `n m`, then m lines `u v` with 0-based labels.
// Writers emit u < v in lexicographic order, so equal graphs give equal bytes.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

inline Graph read_edge_list(std::istream& is) {
  auto read_count = [&](const char* what) -> unsigned long long {
    long long value = 0;
    if (!(is >> value)) throw InputError(std::string("edge list: expected ") + what);
    if (value < 0) throw InputError(std::string("edge list: negative ") + what);
    return static_cast<unsigned long long>(value);
  };
  const auto n = read_count("vertex count");
  const auto m = read_count("edge count");
  if (n > std::numeric_limits<Vertex>::max()) throw InputError("edge list: vertex count too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (unsigned long long i = 0; i < m; ++i) {
    const auto u = read_count("edge endpoint");
    const auto v = read_count("edge endpoint");
    if (u >= n || v >= n) {
      throw InputError("edge list: edge " + std::to_string(i) + " has a label outside [0," + std::to_string(n) + ")");
    }
    edges.push_back({Vertex(u), Vertex(v)});
  }
  std::string trailing;
  if (is >> trailing) throw InputError("edge list: more than " + std::to_string(m) + " edges present");
  return Graph::from_edges(n, std::move(edges));
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

}  // namespace msmd
