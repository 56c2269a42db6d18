#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spectralforge/graph.hpp"

namespace sforge {

struct SolverConfig {
  double tolerance = 1e-9;
  std::size_t dense_cutoff = 4096;
  std::size_t max_iterations = 0;  // 0: bounded by the dimension
  std::uint64_t seed = 0x5eedf0e9e5ULL;
  // Second Lanczos pass with converged pairs locked, to catch multiplicities
  // the first Krylov space cannot see.
  bool multiplicity_check = true;
};

// Guard band for comparisons against thresholds such as 2*sqrt(d-1).
inline constexpr double kGuard = 1e-9;

enum class SolverMethod { dense, lanczos };

std::string method_name(SolverMethod m);

struct Spectrum {
  std::vector<double> eigenvalues;                // descending
  std::vector<std::vector<double>> eigenvectors;  // empty unless requested
  std::vector<double> residual_norms;
  SolverMethod method = SolverMethod::dense;
  std::size_t iterations = 0;
};

// Symmetric operator A + diag(shift) over the adjacency of a graph.
class SymmetricOperator {
 public:
  explicit SymmetricOperator(const Graph& g) : graph_(&g) {}
  SymmetricOperator(const Graph& g, std::vector<double> diagonal)
      : graph_(&g), diagonal_(std::move(diagonal)) {}

  std::size_t dim() const { return graph_->vertex_count(); }
  void apply(const double* x, double* y) const;
  const Graph& graph() const { return *graph_; }
  const std::vector<double>& diagonal() const { return diagonal_; }

 private:
  const Graph* graph_;
  std::vector<double> diagonal_;
};

// Top k_top and bottom k_bottom eigenpairs, merged in descending order.
Spectrum spectrum(const Graph& g, std::size_t k_top, std::size_t k_bottom,
                  const SolverConfig& cfg = {}, bool with_vectors = true);
Spectrum spectrum(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                  const SolverConfig& cfg = {}, bool with_vectors = true);

Spectrum dense_spectrum(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                        bool with_vectors);
Spectrum lanczos_spectrum(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                          const SolverConfig& cfg, bool with_vectors);

// All eigenvalues, descending, dense path.
std::vector<double> full_spectrum(const Graph& g);

double lambda1(const Graph& g, const SolverConfig& cfg = {});
double lambda2(const Graph& g, const SolverConfig& cfg = {});
double lambda_min(const Graph& g, const SolverConfig& cfg = {});

double rayleigh(const Graph& g, std::span<const double> v);
double quadratic_form(const Graph& g, std::span<const double> v);
double localization_mass(std::span<const double> v, std::span<const Vertex> s);

double residual_norm(const SymmetricOperator& op, std::span<const double> v, double lambda);

// Sign convention plus a deterministic order inside numerically tied groups.
void canonicalize(Spectrum& s, double tol);

// Makes the first entry of magnitude above 1e-10 positive.
void normalize_sign(std::vector<double>& v);

}  // namespace sforge
