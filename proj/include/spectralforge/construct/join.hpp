#pragma once

#include <span>
#include <vector>

#include "spectralforge/graph.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct ChainJoin {
  Graph graph;
  std::vector<Vertex> offsets;  // first label of each part
  std::vector<Edge> join_edges;
};

// Disjoint union of the parts in order, plus one edge from the largest
// low-degree label of part j to the smallest low-degree label of part j+1.
ChainJoin chain_join(std::span<const Graph> parts, std::size_t d);

struct JoinDriftEntry {
  std::size_t index = 0;  // 1-based
  double merged = 0.0;    // mu_i of the disjoint union
  double joined = 0.0;    // lambda_i of the joined graph
  double bound = 0.0;
  bool applicable = false;  // mu_i >= 2 sqrt(d-1)
  bool pass = true;
};

struct JoinDriftReport {
  std::size_t r = 0;  // largest r with every part of girth >= 2r+1
  std::size_t joins = 0;
  std::vector<JoinDriftEntry> entries;
  bool pass = true;
};

// |lambda_i - mu_i| <= joins * 2i/(r+1) for each i <= k where mu_i clears
// 2 sqrt(d-1).
JoinDriftReport verify_join_drift(std::span<const Graph> parts, const ChainJoin& joined,
                                  std::size_t d, std::size_t k, const SolverConfig& cfg = {});

}  // namespace sforge
