#include "spectralforge/surgery.hpp"

#include <algorithm>

#include "spectralforge/error.hpp"
#include "spectralforge/rng.hpp"

namespace sforge {

Graph swap(const Graph& g, const SwapMove& m) {
  if (!g.has_edge(m.v1, m.v2) || !g.has_edge(m.u1, m.u2))
    fail(Errc::missing_edge, "swap: edge not present");
  if (m.v1 == m.u1 || m.v1 == m.u2 || m.v2 == m.u1 || m.v2 == m.u2)
    fail(Errc::edges_not_disjoint, "swap: edges share a vertex");
  if (g.has_edge(m.v1, m.u1) || g.has_edge(m.v2, m.u2))
    fail(Errc::replacement_edge_exists, "swap: replacement edge already present");
  const Edge gone1 = Edge::make(m.v1, m.v2);
  const Edge gone2 = Edge::make(m.u1, m.u2);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (Edge e : g.edges())
    if (e != gone1 && e != gone2) edges.push_back(e);
  edges.push_back(Edge::make(m.v1, m.u1));
  edges.push_back(Edge::make(m.v2, m.u2));
  return Graph::from_edges(g.vertex_count(), edges);
}

Graph swap(const Graph& g, Edge e1, Edge e2) {
  return swap(g, SwapMove{e1.u, e1.v, e2.u, e2.v});
}

std::size_t count_crossing(const Graph& g, const std::vector<std::uint8_t>& side) {
  std::size_t c = 0;
  for (Edge e : g.edges())
    if (side[e.u] != side[e.v]) ++c;
  return c;
}

Bisection make_bisection(const Graph& g, std::vector<std::uint8_t> side) {
  if (side.size() != g.vertex_count()) fail(Errc::invalid_argument, "bisection size mismatch");
  Bisection b;
  for (Vertex v = 0; v < side.size(); ++v) (side[v] ? b.part_c : b.part_b).push_back(v);
  b.crossing_count = count_crossing(g, side);
  b.side = std::move(side);
  return b;
}

Bisection bisect(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (n % 2 != 0) fail(Errc::odd_vertex_count, "bisect: odd vertex count");
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));
  std::vector<std::uint8_t> side(n, 0);
  for (std::size_t i = n / 2; i < n; ++i) side[order[i]] = 1;
  return make_bisection(g, std::move(side));
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  constexpr Vertex kGone = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> relabel(n, kGone);
  for (Vertex i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= n) fail(Errc::out_of_range, "vertex out of range");
    relabel[sorted[i]] = i;
  }
  std::vector<Edge> edges;
  for (Edge e : g.edges())
    if (relabel[e.u] != kGone && relabel[e.v] != kGone)
      edges.push_back({relabel[e.u], relabel[e.v]});
  return {Graph::from_edges(sorted.size(), edges), std::move(sorted)};
}

Subgraph delete_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<std::uint8_t> drop(g.vertex_count(), 0);
  for (Vertex v : removed) {
    if (v >= g.vertex_count()) fail(Errc::out_of_range, "vertex out of range");
    drop[v] = 1;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

Subgraph delete_vertex(const Graph& g, Vertex v) {
  const Vertex one[1] = {v};
  return delete_vertices(g, one);
}

}  // namespace sforge
