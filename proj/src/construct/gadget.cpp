#include "spectralforge/construct/gadget.hpp"

#include <algorithm>
#include <cmath>

#include "spectralforge/augment.hpp"
#include "spectralforge/construct/patch.hpp"
#include "spectralforge/error.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"

namespace sforge {

std::pair<double, bool> augmented_top(const Graph& h, std::size_t d, std::size_t depth,
                                      const SolverConfig& cfg) {
  if (h.vertex_count() == 0) return {ramanujan_bound(d), false};
  if (auto x = augmented_eigenvalue(h, d, depth, 1, cfg)) return {*x, true};
  return {ramanujan_bound(d), false};
}

namespace {

std::size_t ceil_div(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-12)); }

// Shared bookkeeping for the deletion searches.
struct Search {
  std::vector<Graph> graphs;
  GadgetResult res;

  void record(const Graph& h, std::size_t vertices, std::size_t padding, const std::string& what,
              const SolverConfig& cfg) {
    GadgetStep st;
    st.step = res.steps.size();
    st.vertices = vertices;
    st.padding = padding;
    st.slots = slot_count(h, res.d);
    const auto [value, above] = augmented_top(h, res.d, res.depth, cfg);
    st.lambda1 = value;
    st.above_threshold = above;
    res.steps.push_back(st);
    res.trace.steps.push_back({st.step, what, value, girth(h), vertices});
    graphs.push_back(h);
  }

  bool crossed(double target) const { return res.steps.back().lambda1 <= target; }

  // Closer of the bracketing pair around the first crossing, or closest seen.
  std::size_t bracket_best(double target) const {
    const std::size_t last = res.steps.size() - 1;
    if (res.steps[last].lambda1 <= target) {
      if (last > 0 && std::abs(res.steps[last - 1].lambda1 - target) <
                          std::abs(res.steps[last].lambda1 - target))
        return last - 1;
      return last;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= last; ++i)
      if (std::abs(res.steps[i].lambda1 - target) < std::abs(res.steps[best].lambda1 - target)) best = i;
    return best;
  }

  void finish(std::size_t best, const SolverConfig& cfg) {
    res.best_step = best;
    res.graph = graphs[best];
    res.achieved = res.steps[best].lambda1;
    res.achieved_above = res.steps[best].above_threshold;
    res.slots = res.steps[best].slots;
    res.trace.target = res.target;
    res.trace.best_step = best;
    res.trace.achieved = res.achieved;
    res.girth = girth(res.graph);
    const std::size_t d = res.d;
    res.achieved_double = augmented_eigenvalue(res.graph, d, 2 * res.depth, 1, cfg);
    if (res.graph.vertex_count() >= 2) {
      res.second = augmented_eigenvalue(res.graph, d, res.depth, 2, cfg);
      res.core_lambda2 = lambda2(res.graph, cfg);
    }
  }
};

}  // namespace

GadgetResult gadget_search_simple(std::size_t d, double target, double eps, const GadgetOptions& opt) {
  if (d < 3) fail(Errc::invalid_argument, "gadget search needs d >= 3");
  if (!(eps > 0)) fail(Errc::invalid_argument, "eps must be positive");
  const double thr = ramanujan_bound(d);
  if (!(target > thr) || target > static_cast<double>(d) + kGuard)
    fail(Errc::invalid_argument, "target must lie in (2 sqrt(d-1), d]");
  Search s;
  s.res.mode = "simple";
  s.res.target_in_range = target >= thr + 2 * eps - kGuard;
  s.res.d = d;
  s.res.target = target;
  s.res.eps = eps;
  s.res.depth = ceil_div(4.0 * std::sqrt(static_cast<double>(d) - 1.0) / eps);

  GenerationPolicy pol;
  pol.seed = derive_seed(opt.seed, "start");
  pol.min_girth = opt.min_girth;
  pol.max_retries = opt.max_retries;
  pol.lambda2_ceiling = thr + eps;
  pol.solver = opt.solver;
  std::size_t m = opt.start_n + (opt.start_n % 2);
  const Generated gen = generate_regular(m, d, pol);
  s.res.start = gen.graph;
  s.res.start_attempts = gen.attempts;
  s.res.start_girth = girth(gen.graph);
  const Graph& g = gen.graph;

  std::vector<std::uint8_t> alive(m, 1);
  std::size_t left = m;
  auto remove_pair = [&]() -> std::string {
    Vertex v = 0;
    while (!alive[v]) ++v;
    alive[v] = 0;
    --left;
    std::string what = "delete " + std::to_string(v);
    for (Vertex u = v + 1; u < m; ++u)
      if (alive[u] && !g.has_edge(v, u)) {
        alive[u] = 0;
        --left;
        what += "+" + std::to_string(u);
        break;
      }
    return what;
  };
  auto current = [&](std::size_t& padding) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < m; ++v)
      if (alive[v]) keep.push_back(v);
    Graph core = induced_subgraph(g, keep).graph;
    const std::size_t leaves = slot_count(core, d);
    padding = leaves % 2 == 0 ? (leaves / 2) % d : 0;
    return padding > 0 ? disjoint_union(core, matching_graph(padding)) : core;
  };

  std::string what = remove_pair();
  std::size_t padding = 0;
  Graph h = current(padding);
  s.record(h, left, padding, what, opt.solver);
  while (!s.crossed(target) && left > 0) {
    what = remove_pair();
    h = current(padding);
    s.record(h, left, padding, what, opt.solver);
  }
  const std::size_t best = s.bracket_best(target);
  if (s.res.target_in_range && s.res.steps[best].lambda1 < thr + eps) {
    // Below 2 sqrt(d-1) + eps at depth J: d isolated edges do as well.
    s.graphs.push_back(matching_graph(d));
    GadgetStep st;
    st.step = s.res.steps.size();
    st.padding = d;
    st.slots = 2 * d * (d - 1);
    st.lambda1 = thr;
    s.res.steps.push_back(st);
    s.res.trace.steps.push_back({st.step, "trivial", thr, kInfinite, 0});
    s.res.trivial = true;
    s.finish(st.step, opt.solver);
    return s.res;
  }
  s.finish(best, opt.solver);
  return s.res;
}

GadgetResult gadget_search_lift(std::size_t d, double target, double eps, const GadgetOptions& opt) {
  if (d < 3) fail(Errc::invalid_argument, "gadget search needs d >= 3");
  if (!(eps > 0)) fail(Errc::invalid_argument, "eps must be positive");
  const double thr = ramanujan_bound(d);
  if (!(target > thr) || !(target < static_cast<double>(d)))
    fail(Errc::invalid_argument, "target must lie in (2 sqrt(d-1), d)");
  Search s;
  s.res.mode = "lift";
  s.res.d = d;
  s.res.target = target;
  s.res.eps = eps;
  s.res.depth = ceil_div(10.0 * std::sqrt(static_cast<double>(d) - 1.0) / eps);

  const std::size_t fold = opt.lift_fold;
  GenerationPolicy pol;
  pol.seed = derive_seed(opt.seed, "lift");
  pol.min_girth = opt.min_girth;
  pol.max_retries = opt.max_retries;
  pol.lambda2_ceiling = thr + eps / 2.0;
  pol.solver = opt.solver;
  const Generated gen = generate_lift(complete_graph(d + 1), fold, pol);
  s.res.start = gen.graph;
  s.res.start_attempts = gen.attempts;
  s.res.start_girth = girth(gen.graph);
  const Graph& g0 = gen.graph;
  const std::size_t total = g0.vertex_count();

  auto suffix = [&](std::size_t from) {
    std::vector<Vertex> keep;
    for (Vertex v = static_cast<Vertex>(from); v < total; ++v) keep.push_back(v);
    return induced_subgraph(g0, keep).graph;
  };
  s.record(g0, total, 0, "start", opt.solver);
  std::size_t i = 0;
  while (!s.crossed(target) && i < d * fold) {
    s.record(suffix(i + 1), total - i - 1, 0, "delete " + std::to_string(i), opt.solver);
    ++i;
  }
  std::size_t best = s.bracket_best(target);
  if (s.res.steps[best].slots % d != 0) {
    // Some step within eps/2 of the target has a slot count divisible by d.
    std::optional<std::size_t> alt;
    for (std::size_t j = 0; j < s.res.steps.size(); ++j) {
      const auto& st = s.res.steps[j];
      if (st.slots % d != 0 || std::abs(st.lambda1 - target) > eps / 2.0) continue;
      if (!alt || std::abs(st.lambda1 - target) < std::abs(s.res.steps[*alt].lambda1 - target)) alt = j;
    }
    if (alt) best = *alt;
  }
  s.finish(best, opt.solver);
  return s.res;
}

GadgetResult bipartite_gadget(std::size_t d, double eps1, double eps2, std::size_t n0,
                              const GadgetOptions& opt) {
  if (d < 3) fail(Errc::invalid_argument, "bipartite gadget needs d >= 3");
  if (!(eps1 > 0) || !(eps2 > 0)) fail(Errc::invalid_argument, "eps1 and eps2 must be positive");
  if (n0 < d) fail(Errc::invalid_argument, "n0 must be at least d");
  const double thr = ramanujan_bound(d);
  const double lo = thr + eps1;
  const double hi = std::min(thr + eps1 + eps2, static_cast<double>(d));
  if (!(hi > lo))
    fail(Errc::infeasible, "window (2 sqrt(d-1)+eps1, 2 sqrt(d-1)+eps1+eps2) misses (2 sqrt(d-1), d)");
  Search s;
  s.res.mode = "bipartite";
  s.res.d = d;
  s.res.eps = std::min(eps1, eps2);
  s.res.window_lo = lo;
  s.res.window_hi = hi;
  s.res.target = 0.5 * (lo + hi);
  s.res.depth = ceil_div(100.0 * std::sqrt(static_cast<double>(d) - 1.0) / s.res.eps);

  const std::size_t n = 2 * n0;
  GenerationPolicy pol;
  pol.seed = derive_seed(opt.seed, "bipartite");
  const auto log_floor = ceil_div(0.5 * std::log(static_cast<double>(n)) / std::log(static_cast<double>(d)));
  pol.min_girth = std::max<std::size_t>(opt.min_girth.value_or(6), log_floor);
  pol.max_retries = opt.max_retries;
  pol.solver = opt.solver;
  const Generated gen = generate_bipartite_regular(n, d, pol);
  s.res.start = gen.graph;
  s.res.start_attempts = gen.attempts;
  s.res.start_girth = girth(gen.graph);

  auto suffix = [&](std::size_t from) {
    std::vector<Vertex> keep;
    for (Vertex v = static_cast<Vertex>(from); v < n; ++v) keep.push_back(v);
    return induced_subgraph(gen.graph, keep).graph;
  };
  s.record(gen.graph, n, 0, "start", opt.solver);
  std::size_t i = 0;
  while (!s.crossed(s.res.target) && i < n0) {
    s.record(suffix(i + 1), n - i - 1, 0, "delete " + std::to_string(i), opt.solver);
    ++i;
  }
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < s.res.steps.size(); ++j) {
    const double x = s.res.steps[j].lambda1;
    if (!(x > lo && x < hi)) continue;
    if (!best || std::abs(x - s.res.target) < std::abs(s.res.steps[*best].lambda1 - s.res.target)) best = j;
  }
  if (!best) fail(Errc::search_exhausted, "no deletion step lands inside the window");
  s.finish(*best, opt.solver);
  return s.res;
}

LiftCertificates certify_lift_gadget(const GadgetResult& g, const GadgetOptions& opt) {
  LiftCertificates c;
  const std::size_t d = g.d;
  const double thr = ramanujan_bound(d);
  const double dm1 = static_cast<double>(d) - 1.0;
  const Length l = g.start_girth;
  c.smallstep_bound = l == kInfinite ? 0.0 : 6.0 * static_cast<double>(d) / static_cast<double>(l);
  for (std::size_t i = 0; i + 1 < g.steps.size(); ++i) {
    if (!(g.steps[i].lambda1 > thr + g.eps / 10.0)) continue;
    c.max_step = std::max(c.max_step, std::abs(g.steps[i].lambda1 - g.steps[i + 1].lambda1));
  }
  c.smallstep_pass = c.max_step <= c.smallstep_bound + kGuard;
  c.second_bound = thr + 1.0 / std::sqrt(dm1) + g.eps / 2.0;
  c.second_value = g.second.value_or(thr);
  c.second_pass = c.second_value <= c.second_bound + kGuard;

  // Deepest augmentation that fits the direct budget.
  std::size_t depth = 0;
  const std::size_t slots = slot_count(g.graph, d);
  for (std::size_t ell = 1; ell <= g.depth; ++ell) {
    std::size_t size = g.graph.vertex_count(), layer = slots;
    for (std::size_t t = 0; t < ell && size <= opt.direct_cap; ++t) {
      size += layer;
      layer *= d - 1;
    }
    if (size > opt.direct_cap) break;
    depth = ell;
  }
  c.direct_depth = depth;
  if (depth > 0) {
    const AugmentedGraph aug = augment(g.graph, d, depth);
    c.direct_top = lambda1(aug.graph, opt.solver);
    const auto t = augmented_eigenvalue(g.graph, d, depth, 1, opt.solver);
    c.transfer_top = t.value_or(thr);
    c.direct_gap = std::abs(c.direct_top - c.transfer_top);
    c.direct_pass = t ? c.direct_gap <= 1e-8 : c.direct_top <= thr + kGuard;
  }

  if (g.mode == "lift") {
    const std::size_t fold = g.start.vertex_count() / (d + 1);
    for (std::size_t i = 1; i + 2 <= d; ++i) {
      std::vector<Vertex> keep;
      for (Vertex v = static_cast<Vertex>((i - 1) * fold); v < g.start.vertex_count(); ++v)
        keep.push_back(v);
      const Graph sub = induced_subgraph(g.start, keep).graph;
      const double x = lambda2(sub, opt.solver);
      const double b = 2.0 * std::sqrt(static_cast<double>(d - i)) + g.eps / 2.0;
      c.fiber_lambda2.push_back(x);
      c.fiber_bound.push_back(b);
      c.fiber_pass = c.fiber_pass && x < b;
    }
  }
  c.window_pass = std::abs(g.achieved - g.target) <= g.eps + kGuard;
  c.saturation_pass = std::abs(g.achieved_double.value_or(thr) - g.target) <= g.eps + kGuard;
  return c;
}

}  // namespace sforge
