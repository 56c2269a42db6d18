#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

struct AugmentationSpec {
  std::size_t d = 3;
  std::optional<std::size_t> s;  // none: deficiency-driven A_d iteration
  std::size_t levels = 0;
  // augment_s only: accept core vertices whose degree plus s exceeds d, as
  // the general (d,s,l) definition does.
  bool allow_excess_degree = false;
};

// Core vertices keep labels 0..|F|-1; tree vertices are appended level by
// level in parent order.
struct AugmentedGraph {
  Graph graph;
  std::vector<Vertex> core;
  std::map<Vertex, Vertex> roots;  // tree root -> anchor
  std::size_t leaf_count = 0;
  std::size_t d = 0;
  std::size_t s = 0;  // trees per core vertex, 0 for the A_d variant
  std::size_t levels = 0;
  std::vector<Vertex> anchor;      // per vertex: core vertex it hangs from
  std::vector<std::size_t> depth;  // per vertex: distance to its anchor
};

AugmentedGraph augment_once(const Graph& h, std::size_t d);
AugmentedGraph augment(const Graph& h, std::size_t d, std::size_t levels);
AugmentedGraph augment_s(const Graph& f, const AugmentationSpec& spec);

// Trees attached at each core vertex by T^levels(d)h: d - deg(v).
std::vector<std::size_t> deficiency(const Graph& h, std::size_t d);

// Sidecar JSON: {core, roots, levels, s, d}.
std::string augmentation_sidecar(const AugmentedGraph& a);

}  // namespace sforge
