#include "spectralforge/layers.hpp"

#include <algorithm>
#include <cmath>

#include "spectralforge/error.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/structure.hpp"

namespace sforge {

LevelDecomposition level_decomposition(const Graph& g, std::span<const Vertex> roots,
                                       std::size_t depth, std::span<const double> v) {
  if (roots.empty()) fail(Errc::empty_set, "level_decomposition: empty root set");
  if (!v.empty() && v.size() != g.vertex_count())
    fail(Errc::invalid_argument, "level_decomposition: vector length mismatch");
  const auto dist = bfs_distances(g, roots, depth);
  LevelDecomposition dec;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (dist[u] == kInfinite || dist[u] > depth) continue;
    if (dec.levels.size() <= dist[u]) dec.levels.resize(dist[u] + 1);
    dec.levels[dist[u]].push_back(u);
  }
  dec.masses.assign(dec.levels.size(), 0.0);
  if (!v.empty())
    for (std::size_t i = 0; i < dec.levels.size(); ++i)
      for (Vertex u : dec.levels[i]) dec.masses[i] += v[u] * v[u];
  return dec;
}

LayerReport check_layer_inequalities(const LevelDecomposition& dec, std::size_t d, double tol) {
  LayerReport rep;
  rep.threshold = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
  rep.min_slack = INFINITY;
  const auto& s = dec.masses;
  if (s.size() < 3) {
    rep.min_slack = 0.0;
    return rep;
  }
  const std::size_t l = s.size() - 2;
  auto add = [&](const char* kind, std::size_t i, std::size_t j, double lhs, double rhs) {
    LayerInstance inst{kind, i, j, lhs, rhs, rhs - lhs, rhs - lhs >= -tol};
    rep.min_slack = std::min(rep.min_slack, inst.slack);
    rep.pass = rep.pass && inst.pass;
    rep.instances.push_back(inst);
  };
  for (std::size_t i = 1; i <= l; ++i) add("convex", i, 0, 2.0 * s[i], s[i + 1] + s[i - 1]);
  for (std::size_t i = 1; i + 1 <= l; ++i)
    for (std::size_t j = 1; j <= std::min(l - i, i); ++j)
      add("pair", i, j, s[i - j + 1] + s[i + j], s[i - j] + s[i + j + 1]);
  return rep;
}

LinfReport linf_bound_check(const Graph& g, double eigenvalue, std::span<const double> vec,
                            std::size_t r) {
  LinfReport rep;
  if (vec.size() != g.vertex_count()) fail(Errc::invalid_argument, "linf: vector length mismatch");
  double nrm = 0.0;
  for (double x : vec) nrm += x * x;
  if (!(nrm > 0)) fail(Errc::zero_vector, "linf: zero vector");
  nrm = std::sqrt(nrm);
  for (double x : vec) rep.max_entry = std::max(rep.max_entry, std::abs(x) / nrm);
  rep.bound = r == 0 ? INFINITY : 1.0 / std::sqrt(static_cast<double>(r));
  rep.margin = rep.bound - rep.max_entry;
  const std::size_t d = g.max_degree();
  const Length gi = girth(g);
  const double thr = 2.0 * std::sqrt(std::max<double>(static_cast<double>(d) - 1.0, 0.0));
  if (r == 0) {
    rep.reason = "r must be positive";
  } else if (gi != kInfinite && gi + 1 < 2 * r) {
    rep.reason = "girth below 2r-1";
  } else if (std::abs(eigenvalue) < thr - kGuard) {
    rep.reason = "|eigenvalue| below 2*sqrt(d-1)";
  } else {
    rep.applicable = true;
  }
  rep.pass = rep.applicable ? rep.max_entry <= rep.bound + kGuard : true;
  if (!rep.applicable) rep.reason = "not-applicable: " + rep.reason;
  return rep;
}

}  // namespace sforge
