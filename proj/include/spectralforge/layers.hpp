#pragma once

#include <span>
#include <string>
#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

struct LevelDecomposition {
  std::vector<std::vector<Vertex>> levels;  // X_0 = U, X_1, ...
  std::vector<double> masses;               // S_i
};

LevelDecomposition level_decomposition(const Graph& g, std::span<const Vertex> roots,
                                       std::size_t depth, std::span<const double> v);

struct LayerInstance {
  std::string kind;  // "convex" (2S_i <= S_{i-1}+S_{i+1}) or "pair" (the j-shifted sums)
  std::size_t i = 0;
  std::size_t j = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;
};

struct LayerReport {
  std::vector<LayerInstance> instances;
  double threshold = 0.0;  // 2*sqrt(d-1)
  double min_slack = 0.0;
  bool pass = true;
};

// The deepest index l is levels.size() - 2, so both families reference
// only S_0..S_{l+1}.
LayerReport check_layer_inequalities(const LevelDecomposition& dec, std::size_t d,
                                     double tol = 1e-9);

struct LinfReport {
  bool applicable = false;
  std::string reason;
  double max_entry = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
};

LinfReport linf_bound_check(const Graph& g, double eigenvalue, std::span<const double> vec,
                            std::size_t r);

}  // namespace sforge
