#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spectralforge/augment.hpp"
#include "spectralforge/graph.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

double ramanujan_bound(std::size_t d);  // 2*sqrt(d-1)

struct AiValue {
  double value = 0.0;
  bool recurrence_path = false;  // discriminant <= 0, closed form unavailable
};

// a_0 = 1, a_1 = lambda, a_{i+1} = lambda a_i - (d-1) a_{i-1}.
double ai_recurrence(double lambda, std::size_t d, std::size_t i);
double ai_closed(double lambda, std::size_t d, std::size_t i);
AiValue ai(double lambda, std::size_t d, std::size_t i);

// a_{levels-1}/a_levels via the ratio recurrence, which never overflows.
double tree_ratio(double lambda, std::size_t d, std::size_t levels);

class SecularFunction {
 public:
  SecularFunction(std::size_t d, std::size_t s, std::size_t levels)
      : d_(d), s_(s), levels_(levels) {}

  // a_0..a_levels at lambda, cached for the last lambda.
  const std::vector<double>& coefficients(double lambda);
  double a(double lambda, std::size_t i) { return coefficients(lambda).at(i); }
  // h(lambda) = lambda - s a_{l-1}/a_l.
  double h(double lambda) const;

  std::size_t d() const { return d_; }
  std::size_t s() const { return s_; }
  std::size_t levels() const { return levels_; }

 private:
  std::size_t d_, s_, levels_;
  double cached_lambda_ = 0.0;
  std::vector<double> cache_;
};

std::optional<double> secular_solve(double mu1, std::size_t d, std::size_t s, std::size_t levels);

// Every admissible h^-1(mu) over the supplied core eigenvalues, descending.
std::vector<double> tree_transfer_eigenvalues(std::span<const double> core_eigenvalues,
                                              std::size_t d, std::size_t s, std::size_t levels);

// Extends a core eigenvector radially over T_s^l(d)F.
std::vector<double> radial_extension(std::span<const double> core_vec, double lambda,
                                     const AugmentedGraph& aug);

struct CeilingVerdict {
  double threshold = 0.0;  // 2 sqrt(d-1+eps) - s/(sqrt(d-1+eps)+sqrt(eps))
  double ceiling = 0.0;    // 2 sqrt(d-1+eps)
  bool below = false;
};

CeilingVerdict lambda2_ceiling_after_augment(double lambda2_core, std::size_t d, std::size_t s,
                                             double eps);

// k-th largest eigenvalue (1-based) of the graph obtained by hanging
// trees[v] d-ary trees of the given depth at each vertex v of h, computed
// without building it. Empty when that eigenvalue is <= 2 sqrt(d-1).
std::optional<double> transfer_eigenvalue(const Graph& h, std::span<const std::size_t> trees,
                                          std::size_t d, std::size_t levels, std::size_t k,
                                          const SolverConfig& cfg = {});

// Same, for T^levels(d)h.
std::optional<double> augmented_eigenvalue(const Graph& h, std::size_t d, std::size_t levels,
                                           std::size_t k, const SolverConfig& cfg = {});

}  // namespace sforge
