#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectralforge/construct/trace.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/surgery.hpp"

namespace sforge {

enum class SwapMode { lambda2, lambda_min };

struct SwapOptions {
  std::uint64_t seed = 0;
  std::size_t girth_floor = 6;        // 0 disables the floor
  double start_ceiling_margin = 0.1;  // start lambda2 <= 2 sqrt(d-1) + margin
  std::size_t max_retries = 1000;
  // Keep swapping after the target is crossed until the crossing count
  // reaches its exhaustion level (sqrt(n) crossing edges for lambda2,
  // 2 sqrt(n) non-crossing edges for lambda_min).
  bool run_to_exhaustion = false;
  SolverConfig solver;
};

struct SwapRecord {
  std::size_t step = 0;
  SwapMove move{};
  double eigenvalue = 0.0;
  Length girth = kInfinite;
  Length odd_girth = kInfinite;
  std::size_t crossing = 0;
  Length partner_distance = kInfinite;
};

struct SwapInterpolation {
  SwapMode mode = SwapMode::lambda2;
  Graph start;
  Graph graph;     // step graph closest to the target
  Graph terminal;  // last graph reached
  InterpolationTrace trace;
  std::vector<SwapRecord> records;
  Bisection bisection;  // of the start graph; the side vector never changes
  std::size_t required_distance = 0;
  std::size_t r_formula = 0;
  std::size_t start_attempts = 0;
  std::optional<std::size_t> crossed_step;     // first step past the target
  std::optional<std::size_t> exhaustion_step;  // first step at exhaustion level
  double exhaustion_rayleigh = 0.0;            // bisection-vector quotient there
  std::string stop_reason;
};

SwapInterpolation interpolate_lambda2(std::size_t n, std::size_t d, double target,
                                      const SwapOptions& opt);
SwapInterpolation interpolate_lambda_min(std::size_t n, std::size_t d, double target,
                                         const SwapOptions& opt);

// Rayleigh quotient of the +1 (B) / -1 (C) vector.
double bisection_rayleigh(const Graph& g, const std::vector<std::uint8_t>& side);

struct DriftReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_drift = 0.0;
  double max_ratio = 0.0;  // drift / bound over checked steps
};

// |delta| <= 8/r, r = floor((g+1)/2) with g the smaller girth of the two
// graphs, at every step where the larger |tracked eigenvalue| exceeds
// 2 sqrt(d-1).
DriftReport verify_swap_drift(const SwapInterpolation& run, std::size_t d);

}  // namespace sforge
