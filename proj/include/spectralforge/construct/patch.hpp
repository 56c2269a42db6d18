#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectralforge/graph.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct PatchPlan {
  std::size_t d = 3;
  Graph host;                 // F_0, d-regular
  std::vector<Graph> gadgets; // F_1..F_{k-1}, max degree <= d
  std::vector<Vertex> patch_vertices;  // M
  std::size_t radius = 1;     // R
};

// Labels: host minus M first (order kept), then each gadget in turn.
struct PatchResult {
  Graph graph;
  std::vector<Vertex> host_original;  // host label of each of the first vertices
  std::vector<Vertex> gadget_offsets;
  std::vector<std::size_t> gadget_sizes;
  std::vector<Edge> cross_edges;      // gadget slot -- host port
  std::size_t slot_count = 0;         // leaves of T^1(d) over all gadgets
  bool divisible_2d = false;
};

// Leaves of T^1(d)g, i.e. the summed deficiency.
std::size_t slot_count(const Graph& g, std::size_t d);

// Greedy far-point selection from vertex 0 with pairwise distance > 4 radius.
std::vector<Vertex> select_patch_vertices(const Graph& host, std::size_t count, std::size_t radius);

PatchResult patch(const PatchPlan& plan);

struct PinningEntry {
  std::size_t index = 0;  // i, 1-based
  double lambda = 0.0;    // lambda_i of the patched graph
  double mu = 0.0;        // mu_{i-1}
  double lower = 0.0;     // componentwise lower bound
  double upper = 0.0;     // mu_{i-1} + sqrt(d-1)/R
  bool pin_pass = false;
  bool lower_pass = false;
  bool upper_pass = false;
};

struct PinningReport {
  double bound = 0.0;            // max(sqrt(d-1)/R, 2 d^3 sum|V_i| / |V_0|)
  double radius_term = 0.0;
  double size_term = 0.0;
  std::vector<PinningEntry> entries;
  std::vector<double> gadget_lambda1;  // mu_1.. sorted descending
  std::vector<double> lambda2s;        // lambda2 of F_0, F_1, ...
  // Hypotheses, reported rather than enforced.
  Length host_girth = kInfinite;
  bool host_girth_ok = false;    // >= 8R
  bool spectral_order_ok = false;  // mu_{k-1} >= max(2 sqrt(d-1), max lambda2)
  bool pin_pass = true;
  bool lower_pass = true;
  bool upper_pass = true;
};

PinningReport verify_patch_pinning(const PatchPlan& plan, const PatchResult& result,
                                   const SolverConfig& cfg = {});

}  // namespace sforge
