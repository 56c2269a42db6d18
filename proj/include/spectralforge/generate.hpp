#pragma once

#include <cstdint>
#include <optional>

#include "spectralforge/graph.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct GenerationPolicy {
  std::uint64_t seed = 0;
  std::optional<std::size_t> min_girth;
  std::size_t max_retries = 1000;
  std::optional<double> lambda2_ceiling;
  std::optional<double> lambda_min_floor;  // reject when lambda_n < floor
  bool require_connected = false;
  SolverConfig solver;
};

struct Generated {
  Graph graph;
  std::size_t attempts = 0;
};

// Sequential pairing: stubs are matched one at a time, each partner drawn
// among stubs on a different, non-adjacent vertex far enough away to respect
// min_girth. Dead ends and failed spectral tests consume a retry.
Generated generate_regular(std::size_t n, std::size_t d, const GenerationPolicy& policy);
Graph random_regular(std::size_t n, std::size_t d, const GenerationPolicy& policy);

// d-regular bipartite graph with sides {0..n/2-1} and {n/2..n-1}.
Generated generate_bipartite_regular(std::size_t n, std::size_t d, const GenerationPolicy& policy);

// Fiber-major labels: vertex (v, k) of the lift is v*N + k.
Graph random_lift(const Graph& base, std::size_t N, std::uint64_t seed);
Generated generate_lift(const Graph& base, std::size_t N, const GenerationPolicy& policy);

// Quotient by fibers; equals base for any lift of it.
Graph project_lift(const Graph& lift, std::size_t N);

}  // namespace sforge
