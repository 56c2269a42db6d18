#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "spectralforge/error.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/spectral.hpp"

namespace sforge {

namespace {

using Vec = Eigen::VectorXd;

struct Pair {
  double value;
  Vec vector;
  double residual;
};

struct RunResult {
  std::vector<Pair> top;     // descending
  std::vector<Pair> bottom;  // ascending
  std::size_t iterations = 0;
  bool converged = false;
  double worst_residual = 0.0;
};

void orthogonalize(Vec& w, const std::vector<Vec>& locked, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& q : locked) w -= q.dot(w) * q;
    for (const Vec& q : basis) w -= q.dot(w) * q;
  }
}

// A fresh random unit vector orthogonal to everything seen so far, or an
// empty vector when the complement is numerically exhausted.
Vec fresh_direction(Rng& rng, std::size_t n, const std::vector<Vec>& locked,
                    const std::vector<Vec>& basis) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    Vec w(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) w(static_cast<Eigen::Index>(i)) = rng.normal();
    const double before = w.norm();
    orthogonalize(w, locked, basis);
    const double after = w.norm();
    if (after > 1e-8 * before) return w / after;
  }
  return {};
}

Vec apply(const SymmetricOperator& op, const Vec& x) {
  Vec y(x.size());
  op.apply(x.data(), y.data());
  return y;
}

RunResult lanczos_run(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                      const SolverConfig& cfg, const std::vector<Vec>& locked,
                      std::uint64_t seed) {
  const std::size_t n = op.dim();
  RunResult out;
  const std::size_t avail = n - std::min(n, locked.size());
  const std::size_t want = k_top + k_bottom;
  if (want == 0 || avail == 0) {
    out.converged = true;
    return out;
  }
  std::size_t mmax = avail;
  if (cfg.max_iterations > 0) mmax = std::min(mmax, std::max(cfg.max_iterations, want));

  Rng rng(seed);
  std::vector<Vec> basis;
  std::vector<double> alpha, beta;  // beta[j] couples q_j and q_{j+1}
  Vec q = fresh_direction(rng, n, locked, basis);
  if (q.size() == 0) {
    out.converged = true;
    return out;
  }
  basis.push_back(q);
  double scale = 1.0;
  std::size_t next_check = std::min(mmax, want + 8);
  bool exhausted = false;

  for (std::size_t j = 0;; ++j) {
    Vec w = apply(op, basis[j]);
    const double a = basis[j].dot(w);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    orthogonalize(w, locked, basis);
    alpha.push_back(a);
    scale = std::max(scale, std::abs(a));
    const std::size_t m = j + 1;
    double b = w.norm();
    scale = std::max(scale, b);
    bool breakdown = b <= 1e-10 * scale;
    Vec next;
    if (m >= mmax) {
      exhausted = true;
    } else if (breakdown) {
      next = fresh_direction(rng, n, locked, basis);
      if (next.size() == 0) exhausted = true;
      b = 0.0;
    } else {
      next = w / b;
    }

    // A breakdown leaves an invariant subspace that may miss wanted pairs,
    // so convergence is only judged on a live Krylov sequence or at the end.
    if (exhausted || (!breakdown && m >= next_check && m >= want)) {
      next_check = std::min(mmax, m + std::max<std::size_t>(4, m / 4));
      Vec diag = Eigen::Map<Vec>(alpha.data(), static_cast<Eigen::Index>(m));
      Vec sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
      for (std::size_t i = 0; i + 1 < m; ++i) sub(static_cast<Eigen::Index>(i)) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const auto& s = tri.eigenvectors();
      const std::size_t kt = std::min(k_top, m);
      const std::size_t kb = std::min(k_bottom, m - kt);
      std::vector<Eigen::Index> idx;
      for (std::size_t i = 0; i < kt; ++i) idx.push_back(static_cast<Eigen::Index>(m - 1 - i));
      for (std::size_t i = 0; i < kb; ++i) idx.push_back(static_cast<Eigen::Index>(i));
      bool small = true;
      for (Eigen::Index i : idx)
        if (std::abs(b * s(static_cast<Eigen::Index>(m - 1), i)) > 0.1 * cfg.tolerance) small = false;
      if (small || exhausted) {
        std::vector<Pair> pairs;
        double worst = 0.0;
        for (Eigen::Index i : idx) {
          Vec y = Vec::Zero(static_cast<Eigen::Index>(n));
          for (std::size_t r = 0; r < m; ++r) y += s(static_cast<Eigen::Index>(r), i) * basis[r];
          y.normalize();
          // Refine the value by the Rayleigh quotient of the assembled vector.
          Vec ay = apply(op, y);
          const double val = y.dot(ay);
          const double res = (ay - val * y).norm();
          worst = std::max(worst, res);
          pairs.push_back({val, std::move(y), res});
        }
        if (worst <= cfg.tolerance || exhausted) {
          out.top.assign(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(kt));
          out.bottom.assign(pairs.begin() + static_cast<std::ptrdiff_t>(kt), pairs.end());
          out.iterations = m;
          out.worst_residual = worst;
          out.converged = worst <= cfg.tolerance && kt == std::min(k_top, avail) &&
                          kb == std::min(k_bottom, avail - kt);
          return out;
        }
      }
    }
    if (exhausted) break;
    beta.push_back(b);
    basis.push_back(std::move(next));
  }
  return out;
}

}  // namespace

Spectrum lanczos_spectrum(const SymmetricOperator& op, std::size_t k_top, std::size_t k_bottom,
                          const SolverConfig& cfg, bool with_vectors) {
  const std::size_t n = op.dim();
  if (k_top + k_bottom > n)
    fail(Errc::invalid_argument, "spectrum: k_top + k_bottom exceeds vertex count");
  std::vector<Vec> locked;
  RunResult run = lanczos_run(op, k_top, k_bottom, cfg, locked, cfg.seed);
  std::size_t iterations = run.iterations;
  if (!run.converged)
    fail(Errc::non_convergence,
         "lanczos: worst residual " + std::to_string(run.worst_residual) + " after " +
             std::to_string(run.iterations) + " iterations");
  std::vector<Pair> top = std::move(run.top);
  std::vector<Pair> bottom = std::move(run.bottom);

  if (cfg.multiplicity_check) {
    // Lock what was found and search the orthogonal complement; any better
    // pair there means the first pass missed a copy of a repeated eigenvalue.
    for (int round = 0; round < 8; ++round) {
      locked.clear();
      for (const Pair& p : top) locked.push_back(p.vector);
      for (const Pair& p : bottom) locked.push_back(p.vector);
      const std::size_t rest = n - locked.size();
      const std::size_t kt = std::min(k_top, rest);
      const std::size_t kb = std::min(k_bottom, rest - kt);
      RunResult extra = lanczos_run(op, kt, kb, cfg, locked,
                                    derive_seed(cfg.seed, static_cast<std::uint64_t>(round + 1)));
      iterations += extra.iterations;
      if (!extra.converged)
        fail(Errc::non_convergence, "lanczos: multiplicity pass did not converge");
      bool changed = false;
      auto merge = [&](std::vector<Pair>& found, std::vector<Pair>& more, std::size_t k,
                       bool descending) {
        auto better = [&](const Pair& a, const Pair& b) {
          return descending ? a.value > b.value : a.value < b.value;
        };
        for (Pair& p : more) {
          const bool gain = found.size() < k ||
                            (descending ? p.value > found.back().value + 10 * cfg.tolerance
                                        : p.value < found.back().value - 10 * cfg.tolerance);
          if (gain) {
            changed = true;
            found.push_back(std::move(p));
            std::stable_sort(found.begin(), found.end(), better);
            if (found.size() > k) found.pop_back();
          }
        }
      };
      merge(top, extra.top, k_top, true);
      merge(bottom, extra.bottom, k_bottom, false);
      if (!changed) break;
    }
  }

  Spectrum s;
  s.method = SolverMethod::lanczos;
  s.iterations = iterations;
  auto emit = [&](Pair& p) {
    s.eigenvalues.push_back(p.value);
    s.residual_norms.push_back(p.residual);
    if (with_vectors) s.eigenvectors.emplace_back(p.vector.data(), p.vector.data() + p.vector.size());
  };
  for (Pair& p : top) emit(p);
  for (auto it = bottom.rbegin(); it != bottom.rend(); ++it) emit(*it);
  canonicalize(s, cfg.tolerance);
  return s;
}

}  // namespace sforge
