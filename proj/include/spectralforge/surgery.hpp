#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

// Removes v1v2 and u1u2, adds v1u1 and v2u2.
struct SwapMove {
  Vertex v1, v2, u1, u2;
};

Graph swap(const Graph& g, const SwapMove& move);
// Pairs e1.u with e2.u and e1.v with e2.v.
Graph swap(const Graph& g, Edge e1, Edge e2);

struct Bisection {
  std::vector<std::uint8_t> side;  // 0 = B, 1 = C
  std::vector<Vertex> part_b;
  std::vector<Vertex> part_c;
  std::size_t crossing_count = 0;

  bool crosses(Edge e) const { return side[e.u] != side[e.v]; }
};

Bisection bisect(const Graph& g, std::uint64_t seed);
Bisection make_bisection(const Graph& g, std::vector<std::uint8_t> side);
std::size_t count_crossing(const Graph& g, const std::vector<std::uint8_t>& side);

// Induced subgraph with dense relabeling; original[new] = old label.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> original;
};

Subgraph delete_vertex(const Graph& g, Vertex v);
Subgraph delete_vertices(const Graph& g, std::span<const Vertex> removed);
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

}  // namespace sforge
