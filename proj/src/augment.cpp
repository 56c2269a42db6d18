#include "spectralforge/augment.hpp"

#include <json.hpp>

#include "spectralforge/error.hpp"

namespace sforge {

namespace {

AugmentedGraph grow(const Graph& h, std::size_t d, std::span<const std::size_t> trees,
                    std::size_t levels, std::size_t s) {
  if (d < 2) fail(Errc::invalid_argument, "augmentation degree must be at least 2");
  const std::size_t n0 = h.vertex_count();
  AugmentedGraph out;
  out.d = d;
  out.s = s;
  out.levels = levels;
  std::vector<Edge> edges = h.edges();
  for (Vertex v = 0; v < n0; ++v) {
    out.core.push_back(v);
    out.anchor.push_back(v);
    out.depth.push_back(0);
  }
  Vertex next = static_cast<Vertex>(n0);
  std::vector<Vertex> frontier;
  if (levels > 0) {
    for (Vertex v = 0; v < n0; ++v) {
      for (std::size_t t = 0; t < trees[v]; ++t) {
        edges.push_back({v, next});
        out.anchor.push_back(v);
        out.depth.push_back(1);
        out.roots.emplace(next, v);
        frontier.push_back(next++);
      }
    }
  }
  for (std::size_t level = 2; level <= levels; ++level) {
    std::vector<Vertex> grown;
    grown.reserve(frontier.size() * (d - 1));
    for (Vertex u : frontier) {
      for (std::size_t c = 0; c + 1 < d; ++c) {
        edges.push_back({u, next});
        out.anchor.push_back(out.anchor[u]);
        out.depth.push_back(level);
        grown.push_back(next++);
      }
    }
    frontier.swap(grown);
  }
  out.graph = Graph::from_edges(next, edges);
  for (Vertex v = 0; v < next; ++v)
    if (out.graph.degree(v) == 1) ++out.leaf_count;
  return out;
}

}  // namespace

std::vector<std::size_t> deficiency(const Graph& h, std::size_t d) {
  std::vector<std::size_t> def(h.vertex_count());
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    if (h.degree(v) > d)
      fail(Errc::degree_exceeds, "vertex " + std::to_string(v) + " has degree above d");
    def[v] = d - h.degree(v);
  }
  return def;
}

AugmentedGraph augment(const Graph& h, std::size_t d, std::size_t levels) {
  const auto def = deficiency(h, d);
  return grow(h, d, def, levels, 0);
}

AugmentedGraph augment_once(const Graph& h, std::size_t d) { return augment(h, d, 1); }

AugmentedGraph augment_s(const Graph& f, const AugmentationSpec& spec) {
  if (!spec.s) return augment(f, spec.d, spec.levels);
  const std::size_t s = *spec.s;
  std::vector<std::size_t> trees(f.vertex_count(), s);
  if (spec.levels > 0 && s > 0 && !spec.allow_excess_degree) {
    for (Vertex v = 0; v < f.vertex_count(); ++v)
      if (f.degree(v) + s > spec.d)
        fail(Errc::degree_exceeds, "vertex " + std::to_string(v) + " would exceed degree d");
  }
  return grow(f, spec.d, trees, spec.levels, s);
}

std::string augmentation_sidecar(const AugmentedGraph& a) {
  nlohmann::ordered_json j;
  j["core"] = a.core;
  nlohmann::ordered_json roots = nlohmann::ordered_json::object();
  for (auto [root, anchor] : a.roots) roots[std::to_string(root)] = anchor;
  j["roots"] = roots;
  j["levels"] = a.levels;
  j["s"] = a.s;
  j["d"] = a.d;
  return j.dump(2) + "\n";
}

}  // namespace sforge
