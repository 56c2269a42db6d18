#include "spectralforge/graph.hpp"

#include <algorithm>

#include "spectralforge/error.hpp"

namespace sforge {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::parity: return "parity";
    case Errc::retries_exhausted: return "retries-exhausted";
    case Errc::edges_not_disjoint: return "edges-not-disjoint";
    case Errc::replacement_edge_exists: return "replacement-edge-exists";
    case Errc::missing_edge: return "missing-edge";
    case Errc::odd_vertex_count: return "odd-vertex-count";
    case Errc::out_of_range: return "out-of-range";
    case Errc::degree_exceeds: return "degree-exceeds-d";
    case Errc::non_convergence: return "non-convergence";
    case Errc::zero_vector: return "zero-vector";
    case Errc::empty_set: return "empty-set";
    case Errc::infeasible: return "infeasible";
    case Errc::leaf_count_mismatch: return "leaf-count-mismatch";
    case Errc::no_low_degree_vertex: return "no-low-degree-vertex";
    case Errc::no_eligible_swap: return "no-eligible-swap";
    case Errc::search_exhausted: return "search-exhausted";
    case Errc::parse: return "parse";
    case Errc::duplicate_edge: return "duplicate-edge";
    case Errc::io: return "io";
  }
  return "unknown";
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max()) fail(Errc::out_of_range, "vertex count too large");
  Graph g(n);
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    if (e.u == e.v) fail(Errc::invalid_argument, "self-loop at " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) fail(Errc::out_of_range, "edge endpoint out of range");
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adj_[fill[e.u]++] = e.v;
    g.adj_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last)
      fail(Errc::duplicate_edge, "parallel edge at vertex " + std::to_string(v));
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

std::size_t Graph::min_degree() const {
  if (vertex_count() == 0) return 0;
  std::size_t best = degree(0);
  for (Vertex v = 1; v < vertex_count(); ++v) best = std::min(best, degree(v));
  return best;
}

bool Graph::is_regular(std::size_t d) const {
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (degree(v) != d) return false;
  return true;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a >= vertex_count() || b >= vertex_count()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(vertex_count());
  for (Vertex v = 0; v < vertex_count(); ++v) out[v] = degree(v);
  return out;
}

std::optional<std::string> validate(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t total = 0;
  for (Vertex u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex v = nb[i];
      if (v >= n) return "neighbor out of range at " + std::to_string(u);
      if (v == u) return "self-loop at " + std::to_string(u);
      if (i > 0 && nb[i - 1] >= v) return "unsorted or parallel adjacency at " + std::to_string(u);
      if (!g.has_edge(v, u)) return "asymmetric edge " + std::to_string(u) + "-" + std::to_string(v);
    }
  }
  if (total != 2 * g.edge_count()) return "edge count mismatch";
  return std::nullopt;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const auto shift = static_cast<Vertex>(a.vertex_count());
  for (Edge e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph::from_edges(a.vertex_count() + b.vertex_count(), edges);
}

Graph add_edges(const Graph& g, std::span<const Edge> extra) {
  std::vector<Edge> edges = g.edges();
  for (Edge e : extra) edges.push_back(Edge::make(e.u, e.v));
  return Graph::from_edges(g.vertex_count(), edges);
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) fail(Errc::invalid_argument, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(Edge::make(v, static_cast<Vertex>((v + 1) % n)));
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, edges);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back(Edge::make(i, (i + 1) % 5));
    edges.push_back(Edge::make(i, i + 5));
    edges.push_back(Edge::make(5 + i, 5 + (i + 2) % 5));
  }
  return Graph::from_edges(10, edges);
}

Graph matching_graph(std::size_t k) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < k; ++i) edges.push_back({2 * i, 2 * i + 1});
  return Graph::from_edges(2 * k, edges);
}

}  // namespace sforge
