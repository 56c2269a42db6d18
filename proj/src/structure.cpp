#include "spectralforge/structure.hpp"

#include <algorithm>
#include <array>

#include "spectralforge/error.hpp"

namespace sforge {

std::vector<Length> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                                  Length max_depth) {
  std::vector<Length> dist(g.vertex_count(), kInfinite);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  for (Vertex s : sources) {
    if (s >= g.vertex_count()) fail(Errc::out_of_range, "BFS source out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    if (dist[x] >= max_depth) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kInfinite) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

namespace {

// Shared BFS scan. With odd_only, only edges inside one BFS layer close a
// candidate; otherwise any non-tree edge does.
Length shortest_cycle(const Graph& g, bool odd_only) {
  const std::size_t n = g.vertex_count();
  Length best = kInfinite;
  std::vector<Length> dist(n, kInfinite);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex root = 0; root < n; ++root) {
    for (Vertex v : queue) dist[v] = kInfinite;
    queue.clear();
    dist[root] = 0;
    parent[root] = root;
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      if (best != kInfinite && 2 * dist[x] + 1 >= best) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == kInfinite) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (y != parent[x]) {
          if (odd_only && dist[y] != dist[x]) continue;
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  return best;
}

}  // namespace

Length girth(const Graph& g) { return shortest_cycle(g, false); }

Length odd_girth(const Graph& g) { return shortest_cycle(g, true); }

Length edge_distance(const Graph& g, Edge e1, Edge e2) {
  if (!g.has_edge(e1.u, e1.v) || !g.has_edge(e2.u, e2.v))
    fail(Errc::missing_edge, "edge_distance: edge not present");
  const std::array<Vertex, 2> src{e1.u, e1.v};
  auto dist = bfs_distances(g, src);
  return std::min(dist[e2.u], dist[e2.v]);
}

Components connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Components c;
  c.label.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (c.label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(c.count++);
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (c.label[y] == std::numeric_limits<std::uint32_t>::max()) {
          c.label[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  return c;
}

bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

bool is_bipartite(const Graph& g) { return odd_girth(g) == kInfinite; }

}  // namespace sforge
