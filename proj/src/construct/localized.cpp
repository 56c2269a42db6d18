#include "spectralforge/construct/localized.hpp"

#include <algorithm>
#include <cmath>

#include "spectralforge/augment.hpp"
#include "spectralforge/construct/patch.hpp"
#include "spectralforge/error.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/structure.hpp"

namespace sforge {

RayleighSplit rayleigh_split(const Graph& g, std::span<const double> v, Vertex f1_begin,
                             std::size_t f1_size) {
  RayleighSplit s;
  const Vertex f1_end = f1_begin + static_cast<Vertex>(f1_size);
  auto in_f1 = [&](Vertex u) { return u >= f1_begin && u < f1_end; };
  std::vector<std::uint8_t> in_x(g.vertex_count(), 0);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex w : g.neighbors(u)) {
      if (w <= u) continue;
      const double t = 2.0 * v[u] * v[w] / norm;
      const bool a = in_f1(u), b = in_f1(w);
      if (a && b) s.small += t;
      else if (!a && !b) s.big += t;
      else {
        s.cross += t;
        in_x[u] = in_x[w] = 1;
      }
    }
  s.total = s.cross + s.small + s.big;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const double m = v[u] * v[u] / norm;
    if (in_x[u]) s.x_mass += m;
    if (in_f1(u)) s.f1_mass += m;
    else s.host_mass += m;
  }
  return s;
}

LocalizedResult localized_graph(std::size_t d, double beta, double host_exponent,
                                const LocalizedOptions& opt) {
  if (d < 3) fail(Errc::invalid_argument, "localized_graph needs d >= 3");
  if (!(beta > 0) || beta >= 1) fail(Errc::invalid_argument, "beta must lie in (0, 1)");
  if (host_exponent < 4) fail(Errc::invalid_argument, "host exponent C must be >= 4");
  if (opt.radius == 0) fail(Errc::invalid_argument, "radius must be >= 1");
  const double thr = ramanujan_bound(d);
  const double dd = static_cast<double>(d);
  LocalizedResult out;

  GadgetOptions gopt;
  gopt.seed = derive_seed(opt.seed, "gadget");
  gopt.solver = opt.solver;
  try {
    out.gadget = bipartite_gadget(d, 0.5 * beta, 0.3 * beta, opt.n0, gopt);
  } catch (const Error& e) {
    fail(e.code(), std::string("gadget stage: ") + e.what());
  }

  const AugmentedGraph f1 = augment(out.gadget.graph, d, opt.levels);
  out.f1_size = f1.graph.vertex_count();
  {
    const Spectrum sp = spectrum(f1.graph, 2, 0, opt.solver, false);
    out.mu1 = sp.eigenvalues[0];
    out.f1_lambda2 = sp.eigenvalues[1];
  }
  const std::size_t slots = slot_count(f1.graph, d);
  if (slots % d != 0) fail(Errc::leaf_count_mismatch, "patch stage: leaf count not divisible by d");
  out.patch_count = slots / d;

  const double want = std::pow(static_cast<double>(out.f1_size), std::sqrt(host_exponent));
  std::size_t host_n = want >= static_cast<double>(opt.host_cap) ? opt.host_cap
                                                                 : static_cast<std::size_t>(want);
  host_n -= host_n % 2;
  out.host_n = host_n;
  GenerationPolicy pol;
  pol.seed = derive_seed(opt.seed, "host");
  pol.min_girth = opt.host_girth;
  pol.lambda2_ceiling = thr + opt.host_margin;
  pol.solver = opt.solver;
  Generated host;
  try {
    host = generate_regular(host_n, d, pol);
  } catch (const Error& e) {
    fail(e.code(), std::string("host stage: ") + e.what());
  }
  out.host_attempts = host.attempts;
  out.host_lambda2 = lambda2(host.graph, opt.solver);
  out.host_girth = girth(host.graph);

  PatchPlan plan;
  plan.d = d;
  plan.host = host.graph;
  plan.gadgets = {f1.graph};
  std::optional<Error> last;
  for (std::size_t r = opt.radius; r >= 1; --r) {
    try {
      plan.patch_vertices = select_patch_vertices(host.graph, out.patch_count, r);
      plan.radius = r;
      last.reset();
      break;
    } catch (const Error& e) {
      last = e;
    }
  }
  if (last) fail(last->code(), std::string("patch stage: ") + last->what());
  out.radius = plan.radius;
  const PatchResult pr = patch(plan);
  out.graph = pr.graph;
  const Vertex off = pr.gadget_offsets[0];
  for (Vertex u = off; u < off + out.f1_size; ++u) out.support.push_back(u);

  const Spectrum sp = spectrum(out.graph, 2, 0, opt.solver, true);
  out.lambda = sp.eigenvalues[1];
  out.vector = sp.eigenvectors[1];
  out.residual = sp.residual_norms[1];
  out.lambda2_achieved = out.lambda;
  out.mass = localization_mass(out.vector, out.support);
  out.girth_achieved = girth(out.graph);

  RayleighSplit& s = out.split;
  s = rayleigh_split(out.graph, out.vector, off, out.f1_size);
  const double n_host = static_cast<double>(host.graph.vertex_count());
  s.cross_bound = std::sqrt(dd - 1.0) * s.x_mass;
  s.small_bound = out.mu1 * s.f1_mass;
  s.big_bound = dd * static_cast<double>(out.f1_size) / n_host + out.host_lambda2 * s.host_mass;
  s.cross_pass = s.cross <= s.cross_bound + kGuard;
  s.small_pass = s.small <= s.small_bound + kGuard;
  s.big_pass = s.big <= s.big_bound + kGuard;

  out.window_lo = thr + 0.4 * beta;
  out.window_hi = thr + 0.9 * beta;
  out.in_window = out.lambda > out.window_lo && out.lambda < out.window_hi;
  out.mu_window_lo = thr + 0.5 * beta;
  out.mu_window_hi = thr + 0.8 * beta;
  out.mu_in_window = out.mu1 > out.mu_window_lo && out.mu1 < out.mu_window_hi;
  const double slack = 32.0 * std::sqrt(dd - 1.0) / static_cast<double>(opt.levels) +
                       dd * static_cast<double>(out.f1_size) / n_host;
  out.predicted_mass = 1.0 - slack / (out.mu1 - thr);
  return out;
}

}  // namespace sforge
