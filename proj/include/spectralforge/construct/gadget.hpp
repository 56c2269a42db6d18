#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectralforge/construct/trace.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

struct GadgetOptions {
  std::uint64_t seed = 0;
  std::size_t start_n = 200;            // simple mode: regular start graph size
  std::size_t lift_fold = 40;           // lift mode: N
  std::optional<std::size_t> min_girth;
  std::size_t max_retries = 1000;
  std::size_t direct_cap = 4000;        // vertex budget for directly built augmentations
  SolverConfig solver;
};

struct GadgetStep {
  std::size_t step = 0;
  std::size_t vertices = 0;          // core vertices left
  std::size_t padding = 0;           // isolated edges added
  std::size_t slots = 0;             // leaves of T^1(d)
  double lambda1 = 0.0;              // of T^depth(d) of the step graph
  bool above_threshold = false;      // lambda1 > 2 sqrt(d-1); else lambda1 holds the threshold
};

struct GadgetResult {
  std::string mode;  // simple, lift, bipartite
  Graph graph;       // the gadget H
  Graph start;       // graph the deletions started from
  std::size_t d = 0;
  double target = 0.0;
  double eps = 0.0;
  std::size_t depth = 0;      // J or I
  double achieved = 0.0;      // lambda1(T^depth(d) H)
  bool achieved_above = false;
  std::optional<double> achieved_double;  // lambda1(T^{2 depth}(d) H)
  std::optional<double> second;           // lambda2(T^depth(d) H) when above 2 sqrt(d-1)
  double core_lambda2 = 0.0;  // lambda2(H)
  Length girth = kInfinite;
  Length start_girth = kInfinite;
  std::size_t slots = 0;
  bool trivial = false;        // d isolated edges
  bool target_in_range = true; // simple mode: target >= 2 sqrt(d-1) + 2 eps
  std::size_t best_step = 0;
  std::vector<GadgetStep> steps;
  InterpolationTrace trace;
  std::size_t start_attempts = 0;
  // Window for bipartite mode.
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Deletes two nonadjacent vertices per step from a near-Ramanujan d-regular
// graph, padding with isolated edges so T^1(d) has a multiple of 2d leaves.
GadgetResult gadget_search_simple(std::size_t d, double target, double eps, const GadgetOptions& opt);

// Deletes vertices fiber by fiber from an N-lift of K_{d+1}.
GadgetResult gadget_search_lift(std::size_t d, double target, double eps, const GadgetOptions& opt);

// Deletes one side of a d-regular bipartite graph on 2 n0 vertices in label
// order until lambda1(T^I) enters (2 sqrt(d-1)+eps1, 2 sqrt(d-1)+eps1+eps2).
GadgetResult bipartite_gadget(std::size_t d, double eps1, double eps2, std::size_t n0,
                              const GadgetOptions& opt);

// lambda1 of T^depth(d) h; the flag is false when it does not exceed
// 2 sqrt(d-1), in which case the value is that threshold.
std::pair<double, bool> augmented_top(const Graph& h, std::size_t d, std::size_t depth,
                                      const SolverConfig& cfg = {});

struct LiftCertificates {
  double smallstep_bound = 0.0;  // 6d/L
  double max_step = 0.0;         // over steps with lambda1 > 2 sqrt(d-1) + eps/10
  bool smallstep_pass = true;
  double second_bound = 0.0;     // 2 sqrt(d-1) + 1/sqrt(d-1) + eps/2
  double second_value = 0.0;
  bool second_pass = true;
  std::size_t direct_depth = 0;  // depth of the directly built check
  double direct_top = 0.0;
  double transfer_top = 0.0;
  double direct_gap = 0.0;
  bool direct_pass = true;
  std::vector<double> fiber_lambda2;  // lambda2(G0'[V_i u ... u V_{d+1}]), i = 1..d-2
  std::vector<double> fiber_bound;    // 2 sqrt(d-i) + eps/2
  bool fiber_pass = true;
  bool window_pass = false;           // |achieved - target| <= eps
  bool saturation_pass = false;       // |lambda1(T^{2I}) - target| <= eps
};

LiftCertificates certify_lift_gadget(const GadgetResult& g, const GadgetOptions& opt);

}  // namespace sforge
