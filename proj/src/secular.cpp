#include "spectralforge/secular.hpp"

#include <algorithm>
#include <cmath>

#include "spectralforge/error.hpp"

namespace sforge {

double ramanujan_bound(std::size_t d) {
  return 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
}

double ai_recurrence(double lambda, std::size_t d, std::size_t i) {
  const double q = static_cast<double>(d) - 1.0;
  double prev = 1.0, cur = lambda;
  if (i == 0) return prev;
  for (std::size_t k = 1; k < i; ++k) {
    const double nxt = lambda * cur - q * prev;
    prev = cur;
    cur = nxt;
  }
  return cur;
}

double ai_closed(double lambda, std::size_t d, std::size_t i) {
  const double disc = lambda * lambda - 4.0 * (static_cast<double>(d) - 1.0);
  if (!(disc > 0)) fail(Errc::invalid_argument, "closed form needs lambda > 2 sqrt(d-1)");
  const double root = std::sqrt(disc);
  const double rp = 0.5 * (lambda + root);
  const double rm = 0.5 * (lambda - root);
  const double e = static_cast<double>(i + 1);
  return (std::pow(rp, e) - std::pow(rm, e)) / root;
}

AiValue ai(double lambda, std::size_t d, std::size_t i) {
  const double disc = lambda * lambda - 4.0 * (static_cast<double>(d) - 1.0);
  return {ai_recurrence(lambda, d, i), !(disc > 0)};
}

double tree_ratio(double lambda, std::size_t d, std::size_t levels) {
  if (levels == 0) return 0.0;
  const double q = static_cast<double>(d) - 1.0;
  double r = 1.0 / lambda;
  for (std::size_t i = 1; i < levels; ++i) r = 1.0 / (lambda - q * r);
  return r;
}

const std::vector<double>& SecularFunction::coefficients(double lambda) {
  if (cache_.empty() || cached_lambda_ != lambda) {
    const double q = static_cast<double>(d_) - 1.0;
    cache_.assign(levels_ + 1, 1.0);
    if (levels_ >= 1) cache_[1] = lambda;
    for (std::size_t i = 2; i <= levels_; ++i)
      cache_[i] = lambda * cache_[i - 1] - q * cache_[i - 2];
    cached_lambda_ = lambda;
  }
  return cache_;
}

double SecularFunction::h(double lambda) const {
  return lambda - static_cast<double>(s_) * tree_ratio(lambda, d_, levels_);
}

std::optional<double> secular_solve(double mu1, std::size_t d, std::size_t s, std::size_t levels) {
  const double thr = ramanujan_bound(d);
  if (s == 0 || levels == 0) {
    if (mu1 > thr) return mu1;
    return std::nullopt;
  }
  SecularFunction f(d, s, levels);
  auto g = [&](double x) { return f.h(x) - mu1; };
  const double lo = thr + 1e-9;
  // h(x) >= x - s/sqrt(d-1) above the threshold, so the root is below mu1 + s.
  const double hi = std::max(static_cast<double>(d + s), mu1 + static_cast<double>(s) + 1.0);
  constexpr int kGrid = 1024;
  double x0 = lo, g0 = g(lo);
  if (g0 == 0.0) return lo;
  if (g0 > 0.0) return std::nullopt;
  for (int k = 1; k <= kGrid; ++k) {
    const double x1 = lo + (hi - lo) * k / kGrid;
    const double g1 = g(x1);
    if (g1 >= 0.0) {
      double a = x0, b = x1;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        if (g(m) < 0.0) a = m;
        else b = m;
      }
      return 0.5 * (a + b);
    }
    x0 = x1;
  }
  return std::nullopt;
}

std::vector<double> tree_transfer_eigenvalues(std::span<const double> core_eigenvalues,
                                              std::size_t d, std::size_t s, std::size_t levels) {
  std::vector<double> out;
  for (double mu : core_eigenvalues)
    if (auto x = secular_solve(mu, d, s, levels)) out.push_back(*x);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> radial_extension(std::span<const double> core_vec, double lambda,
                                     const AugmentedGraph& aug) {
  if (core_vec.size() != aug.core.size())
    fail(Errc::invalid_argument, "radial_extension: core vector length mismatch");
  if (!(lambda > ramanujan_bound(aug.d)))
    fail(Errc::invalid_argument, "radial_extension: lambda must exceed 2 sqrt(d-1)");
  const std::size_t l = aug.levels;
  // scale[t] = a_{l-t}/a_l for a vertex at depth t, as a product of ratios.
  std::vector<double> ratio(l + 1, 0.0);
  if (l >= 1) ratio[1] = 1.0 / lambda;
  const double q = static_cast<double>(aug.d) - 1.0;
  for (std::size_t i = 2; i <= l; ++i) ratio[i] = 1.0 / (lambda - q * ratio[i - 1]);
  std::vector<double> scale(l + 1, 1.0);
  for (std::size_t t = 1; t <= l; ++t) scale[t] = scale[t - 1] * ratio[l - t + 1];
  std::vector<double> out(aug.graph.vertex_count(), 0.0);
  for (Vertex u = 0; u < out.size(); ++u) out[u] = core_vec[aug.anchor[u]] * scale[aug.depth[u]];
  return out;
}

CeilingVerdict lambda2_ceiling_after_augment(double lambda2_core, std::size_t d, std::size_t s,
                                             double eps) {
  if (eps < 0) fail(Errc::invalid_argument, "eps must be non-negative");
  const double base = std::sqrt(static_cast<double>(d) - 1.0 + eps);
  CeilingVerdict v;
  v.ceiling = 2.0 * base;
  v.threshold = 2.0 * base - static_cast<double>(s) / (base + std::sqrt(eps));
  v.below = lambda2_core < v.threshold;
  return v;
}

std::optional<double> transfer_eigenvalue(const Graph& h, std::span<const std::size_t> trees,
                                          std::size_t d, std::size_t levels, std::size_t k,
                                          const SolverConfig& cfg) {
  const std::size_t n = h.vertex_count();
  if (trees.size() != n) fail(Errc::invalid_argument, "transfer: tree count length mismatch");
  if (k == 0 || k > n) fail(Errc::invalid_argument, "transfer: k out of range");
  const double thr = ramanujan_bound(d);
  // Counting eigenvalues above t of the augmented graph reduces to counting
  // eigenvalues above t of A_h + c(t) diag(trees): the forest part has its
  // whole spectrum below 2 sqrt(d-1), so its Schur complement is definite.
  auto f = [&](double t) {
    const double c = tree_ratio(t, d, levels);
    std::vector<double> diag(n);
    for (std::size_t v = 0; v < n; ++v) diag[v] = c * static_cast<double>(trees[v]);
    SymmetricOperator op(h, std::move(diag));
    return spectrum(op, k, 0, cfg, false).eigenvalues[k - 1] - t;
  };
  double lo = thr + kGuard;
  if (f(lo) <= 0.0) return std::nullopt;
  double hi = static_cast<double>(d) + 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  while (hi - lo > 1e-12) {
    const double m = 0.5 * (lo + hi);
    if (f(m) > 0.0) lo = m;
    else hi = m;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> augmented_eigenvalue(const Graph& h, std::size_t d, std::size_t levels,
                                           std::size_t k, const SolverConfig& cfg) {
  const auto trees = deficiency(h, d);
  return transfer_eigenvalue(h, trees, d, levels, k, cfg);
}

}  // namespace sforge
