#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectralforge/construct/trace.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct DeletionOptions {
  std::uint64_t seed = 0;
  bool connected = false;
  std::size_t walk_cap = 64;  // upper limit on the walk length
  std::size_t max_retries = 1000;
  std::optional<std::size_t> min_girth;
  // Start ceiling on lambda2; none means 2 sqrt(d-1).
  std::optional<double> start_ceiling;
  SolverConfig solver;
};

struct DeletionRecord {
  std::size_t step = 0;
  Vertex removed = 0;  // original label, meaningless at step 0
  std::size_t vertices = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::size_t walk_length = 0;
  double log_walks = 0.0;           // log of the closed walk total of the previous graph
  double removed_share = 0.0;       // fraction of those walks lost by the deletion
  double certified_factor = 1.0;    // lower bound on lambda1 ratio from walk counts
  double nominal_factor = 1.0;      // 1 - 3 log q / q
  std::size_t low_degree = 0;       // vertices of degree < d
  bool connected = true;
};

struct DeletionInterpolation {
  Graph start;
  Graph graph;                    // returned step graph
  std::vector<Vertex> original;   // original label of each vertex of graph
  InterpolationTrace trace;
  std::vector<DeletionRecord> records;
  std::size_t start_attempts = 0;
  std::optional<std::size_t> crossed_step;
  // |lambda1(graph) - target| bound from the certified factor at the
  // crossing step: (1 - f) lambda1 of the step before.
  double certified_gap = 0.0;
  std::string stop_reason;
};

DeletionInterpolation deletion_interpolate(std::size_t n, std::size_t d, double target,
                                           const DeletionOptions& opt);

// Largest even integer <= q/2, capped, and at least 2.
std::size_t deletion_walk_length(std::size_t q, std::size_t cap);

}  // namespace sforge
