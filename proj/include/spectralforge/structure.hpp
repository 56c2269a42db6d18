#pragma once

#include <span>
#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

// Multi-source BFS; vertices farther than max_depth stay kInfinite.
std::vector<Length> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                                  Length max_depth = kInfinite);

Length girth(const Graph& g);
Length odd_girth(const Graph& g);

// Minimum endpoint distance; 0 when the edges share a vertex.
Length edge_distance(const Graph& g, Edge e1, Edge e2);

struct Components {
  std::vector<std::uint32_t> label;
  std::size_t count = 0;
};

Components connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

}  // namespace sforge
