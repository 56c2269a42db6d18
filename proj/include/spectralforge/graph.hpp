#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sforge {

using Vertex = std::uint32_t;

// Path and cycle lengths; kInfinite marks "no path" / "acyclic".
using Length = std::size_t;
inline constexpr Length kInfinite = std::numeric_limits<Length>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph stored as sorted CSR adjacency.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}
  explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

  // Throws on self-loops, duplicates, or out-of-range endpoints.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adj_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  std::size_t min_degree() const;
  bool is_regular(std::size_t d) const;

  bool has_edge(Vertex a, Vertex b) const;

  // All edges with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
};

// Structural validator: symmetric, loop-free, no parallel edges, sorted.
// Returns a description of the first violation, or nullopt.
std::optional<std::string> validate(const Graph& g);

// Disjoint union; vertices of b are shifted by a.vertex_count().
Graph disjoint_union(const Graph& a, const Graph& b);

Graph add_edges(const Graph& g, std::span<const Edge> extra);

Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();
// k disjoint copies of K2.
Graph matching_graph(std::size_t k);

}  // namespace sforge
