#include "spectralforge/construct/patch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "spectralforge/error.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"

namespace sforge {

std::size_t slot_count(const Graph& g, std::size_t d) {
  std::size_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > d) fail(Errc::degree_exceeds, "gadget vertex exceeds degree d");
    total += d - g.degree(v);
  }
  return total;
}

std::vector<Vertex> select_patch_vertices(const Graph& host, std::size_t count, std::size_t radius) {
  const std::size_t n = host.vertex_count();
  if (count == 0) return {};
  if (n == 0) fail(Errc::infeasible, "empty host");
  std::vector<Vertex> chosen{0};
  std::vector<Length> best(n, kInfinite);
  auto absorb = [&](Vertex v) {
    const std::array<Vertex, 1> src{v};
    const auto dist = bfs_distances(host, src);
    for (Vertex u = 0; u < n; ++u) best[u] = std::min(best[u], dist[u]);
  };
  absorb(0);
  const Length need = 4 * radius;
  while (chosen.size() < count) {
    Vertex pick = 0;
    Length far = 0;
    for (Vertex u = 0; u < n; ++u)
      if (best[u] > far) {
        far = best[u];
        pick = u;
      }
    if (far <= need)
      fail(Errc::infeasible, "cannot place " + std::to_string(count) +
                                 " patch vertices at pairwise distance > " + std::to_string(need) +
                                 " (placed " + std::to_string(chosen.size()) + ")");
    chosen.push_back(pick);
    absorb(pick);
  }
  return chosen;
}

PatchResult patch(const PatchPlan& plan) {
  const std::size_t d = plan.d;
  const Graph& host = plan.host;
  if (!host.is_regular(d))
    fail(Errc::invalid_argument, "host must be d-regular");
  PatchResult out;
  for (const Graph& g : plan.gadgets) out.slot_count += slot_count(g, d);
  const auto& m = plan.patch_vertices;
  if (out.slot_count != m.size() * d)
    fail(Errc::leaf_count_mismatch, "leaf count " + std::to_string(out.slot_count) +
                                        " differs from |M| d = " + std::to_string(m.size() * d));
  out.divisible_2d = out.slot_count % (2 * d) == 0;

  std::vector<std::uint8_t> in_m(host.vertex_count(), 0);
  for (Vertex v : m) {
    if (v >= host.vertex_count()) fail(Errc::out_of_range, "patch vertex out of range");
    if (in_m[v]) fail(Errc::invalid_argument, "repeated patch vertex");
    in_m[v] = 1;
  }
  const Length need = 4 * plan.radius;
  for (Vertex v : m) {
    const std::array<Vertex, 1> src{v};
    const auto dist = bfs_distances(host, src, need);
    for (Vertex u : m)
      if (u != v && dist[u] <= need)
        fail(Errc::infeasible, "patch vertices " + std::to_string(v) + " and " + std::to_string(u) +
                                   " are within distance 4R");
  }

  Subgraph core = delete_vertices(host, m);
  out.host_original = core.original;
  std::vector<Vertex> relabel(host.vertex_count(), 0);
  for (Vertex i = 0; i < core.original.size(); ++i) relabel[core.original[i]] = i;

  std::vector<Vertex> ports;
  for (Vertex v : m)
    for (Vertex w : host.neighbors(v)) ports.push_back(relabel[w]);

  Graph acc = core.graph;
  std::vector<Vertex> slots;
  for (const Graph& g : plan.gadgets) {
    const Vertex off = static_cast<Vertex>(acc.vertex_count());
    out.gadget_offsets.push_back(off);
    out.gadget_sizes.push_back(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      for (std::size_t k = g.degree(v); k < d; ++k) slots.push_back(off + v);
    acc = disjoint_union(acc, g);
  }
  for (std::size_t k = 0; k < slots.size(); ++k) out.cross_edges.push_back(Edge::make(slots[k], ports[k]));
  out.graph = add_edges(acc, out.cross_edges);
  return out;
}

PinningReport verify_patch_pinning(const PatchPlan& plan, const PatchResult& result,
                                   const SolverConfig& cfg) {
  PinningReport rep;
  const std::size_t d = plan.d;
  const double dd = static_cast<double>(d);
  const double thr = ramanujan_bound(d);
  std::size_t gadget_total = 0;
  for (const Graph& g : plan.gadgets) {
    gadget_total += g.vertex_count();
    const Spectrum sp = spectrum(g, std::min<std::size_t>(2, g.vertex_count()), 0, cfg, false);
    rep.gadget_lambda1.push_back(sp.eigenvalues[0]);
  }
  std::sort(rep.gadget_lambda1.begin(), rep.gadget_lambda1.end(), std::greater<>());
  rep.lambda2s.push_back(lambda2(plan.host, cfg));
  for (const Graph& g : plan.gadgets) rep.lambda2s.push_back(g.vertex_count() > 1 ? lambda2(g, cfg) : 0.0);

  const double n0 = static_cast<double>(plan.host.vertex_count());
  rep.radius_term = std::sqrt(dd - 1.0) / static_cast<double>(plan.radius);
  rep.size_term = 2.0 * dd * dd * dd * static_cast<double>(gadget_total) / n0;
  rep.bound = std::max(rep.radius_term, rep.size_term);
  rep.host_girth = girth(plan.host);
  rep.host_girth_ok = rep.host_girth != kInfinite ? rep.host_girth >= 8 * plan.radius : true;
  const double mu_floor = std::max(thr, *std::max_element(rep.lambda2s.begin(), rep.lambda2s.end()));
  rep.spectral_order_ok = rep.gadget_lambda1.empty() || rep.gadget_lambda1.back() >= mu_floor;

  const std::size_t k = plan.gadgets.size() + 1;
  const Spectrum top = spectrum(result.graph, k, 0, cfg, false);
  std::vector<double> mu{dd};
  mu.insert(mu.end(), rep.gadget_lambda1.begin(), rep.gadget_lambda1.end());
  std::vector<double> lower{dd - rep.size_term};
  lower.insert(lower.end(), rep.gadget_lambda1.begin(), rep.gadget_lambda1.end());
  std::sort(lower.begin(), lower.end(), std::greater<>());
  for (std::size_t i = 0; i < k; ++i) {
    PinningEntry e;
    e.index = i + 1;
    e.lambda = top.eigenvalues[i];
    e.mu = mu[i];
    e.lower = lower[i];
    e.upper = mu[i] + rep.radius_term;
    e.pin_pass = std::abs(e.lambda - e.mu) <= rep.bound + kGuard;
    e.lower_pass = e.lambda >= e.lower - kGuard;
    e.upper_pass = e.lambda <= e.upper + kGuard;
    rep.pin_pass = rep.pin_pass && e.pin_pass;
    rep.lower_pass = rep.lower_pass && e.lower_pass;
    rep.upper_pass = rep.upper_pass && e.upper_pass;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace sforge
