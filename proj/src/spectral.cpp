#include "spectralforge/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectralforge/error.hpp"

namespace sforge {

std::string method_name(SolverMethod m) {
  return m == SolverMethod::dense ? "dense" : "lanczos";
}

void SymmetricOperator::apply(const double* x, double* y) const {
  const std::size_t n = dim();
  for (Vertex v = 0; v < n; ++v) {
    double acc = diagonal_.empty() ? 0.0 : diagonal_[v] * x[v];
    for (Vertex u : graph_->neighbors(v)) acc += x[u];
    y[v] = acc;
  }
}

void normalize_sign(std::vector<double>& v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-10 * std::max(scale, 1e-300)) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

double residual_norm(const SymmetricOperator& op, std::span<const double> v, double lambda) {
  std::vector<double> y(op.dim());
  op.apply(v.data(), y.data());
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - lambda * v[i];
    acc += r * r;
  }
  return std::sqrt(acc);
}

namespace {

void check_request(std::size_t n, std::size_t k_top, std::size_t k_bottom) {
  if (k_top + k_bottom > n)
    fail(Errc::invalid_argument, "spectrum: k_top + k_bottom exceeds vertex count");
}

}  // namespace

void canonicalize(Spectrum& s, double tol) {
  for (auto& v : s.eigenvectors) normalize_sign(v);
  if (s.eigenvectors.empty()) return;
  const double tie = std::max(10 * tol, 1e-10);
  std::size_t i = 0;
  while (i < s.eigenvalues.size()) {
    std::size_t j = i + 1;
    while (j < s.eigenvalues.size() && s.eigenvalues[j - 1] - s.eigenvalues[j] <= tie) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> idx(j - i);
      std::iota(idx.begin(), idx.end(), i);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return s.eigenvectors[a] > s.eigenvectors[b];
      });
      std::vector<double> vals, res;
      std::vector<std::vector<double>> vecs;
      for (std::size_t k : idx) {
        vals.push_back(s.eigenvalues[k]);
        res.push_back(s.residual_norms[k]);
        vecs.push_back(std::move(s.eigenvectors[k]));
      }
      // Values inside a tie group stay in descending order.
      std::sort(vals.begin(), vals.end(), std::greater<>());
      for (std::size_t k = 0; k < idx.size(); ++k) {
        s.eigenvalues[i + k] = vals[k];
        s.residual_norms[i + k] = res[k];
        s.eigenvectors[i + k] = std::move(vecs[k]);
      }
    }
    i = j;
  }
}

Spectrum dense_spectrum(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                        bool with_vectors) {
  const std::size_t n = op.dim();
  check_request(n, k_top, k_bottom);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Graph& g = op.graph();
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) a(v, u) = 1.0;
    if (!op.diagonal().empty()) a(v, v) = op.diagonal()[v];
  }
  Spectrum s;
  s.method = SolverMethod::dense;
  if (n == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(Errc::non_convergence, "dense eigensolver failed");
  std::vector<Eigen::Index> picks;
  for (std::size_t i = 0; i < k_top; ++i) picks.push_back(static_cast<Eigen::Index>(n - 1 - i));
  for (std::size_t i = k_bottom; i-- > 0;) picks.push_back(static_cast<Eigen::Index>(i));
  for (Eigen::Index idx : picks) {
    s.eigenvalues.push_back(es.eigenvalues()(idx));
    if (with_vectors) {
      const Eigen::VectorXd col = es.eigenvectors().col(idx);
      std::vector<double> v(col.data(), col.data() + col.size());
      s.residual_norms.push_back(residual_norm(op, v, s.eigenvalues.back()));
      s.eigenvectors.push_back(std::move(v));
    }
  }
  canonicalize(s, 1e-9);
  return s;
}

Spectrum spectrum(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                  const SolverConfig& cfg, bool with_vectors) {
  if (!(cfg.tolerance > 0)) fail(Errc::invalid_argument, "solver tolerance must be positive");
  check_request(op.dim(), k_top, k_bottom);
  Spectrum s = op.dim() <= cfg.dense_cutoff
                   ? dense_spectrum(op, k_top, k_bottom, with_vectors)
                   : lanczos_spectrum(op, k_top, k_bottom, cfg, with_vectors);
  return s;
}

Spectrum spectrum(const Graph& g, std::size_t k_top, std::size_t k_bottom,
                  const SolverConfig& cfg, bool with_vectors) {
  return spectrum(SymmetricOperator(g), k_top, k_bottom, cfg, with_vectors);
}

std::vector<double> full_spectrum(const Graph& g) {
  return dense_spectrum(SymmetricOperator(g), g.vertex_count(), 0, false).eigenvalues;
}

double lambda1(const Graph& g, const SolverConfig& cfg) {
  return spectrum(g, 1, 0, cfg, false).eigenvalues.at(0);
}

double lambda2(const Graph& g, const SolverConfig& cfg) {
  if (g.vertex_count() < 2) fail(Errc::invalid_argument, "lambda2 needs two vertices");
  return spectrum(g, 2, 0, cfg, false).eigenvalues.at(1);
}

double lambda_min(const Graph& g, const SolverConfig& cfg) {
  return spectrum(g, 0, 1, cfg, false).eigenvalues.at(0);
}

double quadratic_form(const Graph& g, std::span<const double> v) {
  if (v.size() != g.vertex_count()) fail(Errc::invalid_argument, "vector length mismatch");
  double acc = 0.0;
  for (Edge e : g.edges()) acc += 2.0 * v[e.u] * v[e.v];
  return acc;
}

double rayleigh(const Graph& g, std::span<const double> v) {
  double nrm = 0.0;
  for (double x : v) nrm += x * x;
  if (!(nrm > 0)) fail(Errc::zero_vector, "rayleigh: zero vector");
  return quadratic_form(g, v) / nrm;
}

double localization_mass(std::span<const double> v, std::span<const Vertex> s) {
  double total = 0.0;
  for (double x : v) total += x * x;
  if (!(total > 0)) fail(Errc::zero_vector, "localization_mass: zero vector");
  std::vector<Vertex> uniq(s.begin(), s.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  double part = 0.0;
  for (Vertex u : uniq) {
    if (u >= v.size()) fail(Errc::out_of_range, "localization_mass: vertex out of range");
    part += v[u] * v[u];
  }
  return part / total;
}

}  // namespace sforge
