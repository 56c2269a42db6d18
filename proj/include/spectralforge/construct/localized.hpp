#pragma once

#include <vector>

#include "spectralforge/construct/gadget.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct LocalizedOptions {
  std::uint64_t seed = 0;
  std::size_t n0 = 200;           // bipartite gadget half size
  std::size_t levels = 3;         // F_1 = T^levels(d) of the gadget, built explicitly
  std::size_t host_cap = 10000;
  std::size_t radius = 2;         // preferred R; lowered until M fits
  double host_margin = 0.05;      // host lambda2 <= 2 sqrt(d-1) + margin
  std::size_t host_girth = 6;
  SolverConfig solver;
};

struct RayleighSplit {
  double cross = 0.0;   // v^T A_C v, edges between F_1 leaves and host ports
  double small = 0.0;   // v^T A_s v, edges of F_1
  double big = 0.0;     // v^T A_b v, edges of the host part
  double total = 0.0;
  double x_mass = 0.0;  // sum over X of v^2
  double f1_mass = 0.0;
  double host_mass = 0.0;
  double cross_bound = 0.0;  // sqrt(d-1) x_mass
  double small_bound = 0.0;  // mu_1 f1_mass
  double big_bound = 0.0;    // d |V_1|/|V_0| + lambda2(F_0) host_mass
  bool cross_pass = false;
  bool small_pass = false;
  bool big_pass = false;
};

struct LocalizedResult {
  Graph graph;
  std::vector<Vertex> support;  // V(F_1) inside graph
  double lambda = 0.0;          // lambda2 of graph
  std::vector<double> vector;   // unit eigenvector
  double residual = 0.0;
  double mass = 0.0;
  Length girth_achieved = kInfinite;
  double lambda2_achieved = 0.0;

  GadgetResult gadget;
  std::size_t f1_size = 0;
  double mu1 = 0.0;             // lambda1(F_1)
  double f1_lambda2 = 0.0;
  std::size_t host_n = 0;
  std::size_t host_attempts = 0;
  double host_lambda2 = 0.0;
  Length host_girth = kInfinite;
  std::size_t radius = 0;
  std::size_t patch_count = 0;  // |M|
  RayleighSplit split;
  double window_lo = 0.0;       // 2 sqrt(d-1) + 0.4 beta
  double window_hi = 0.0;       // 2 sqrt(d-1) + 0.9 beta
  bool in_window = false;
  double mu_window_lo = 0.0;    // 2 sqrt(d-1) + 0.5 beta
  double mu_window_hi = 0.0;    // 2 sqrt(d-1) + 0.8 beta
  bool mu_in_window = false;
  // 1 - (32 sqrt(d-1)/l + d|V_1|/|V_0|)/(mu_1 - 2 sqrt(d-1)) with the measured
  // ingredients; may be negative at this scale.
  double predicted_mass = 0.0;
};

LocalizedResult localized_graph(std::size_t d, double beta, double host_exponent,
                                const LocalizedOptions& opt);

// Splits v^T A v of a patched graph along F_1 / host / crossing edges.
RayleighSplit rayleigh_split(const Graph& g, std::span<const double> v, Vertex f1_begin,
                             std::size_t f1_size);

}  // namespace sforge
