#include "spectralforge/construct/swap_interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spectralforge/error.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/structure.hpp"

namespace sforge {

double bisection_rayleigh(const Graph& g, const std::vector<std::uint8_t>& side) {
  std::vector<double> x(g.vertex_count());
  for (Vertex v = 0; v < x.size(); ++v) x[v] = side[v] ? -1.0 : 1.0;
  return rayleigh(g, x);
}

namespace {

double tracked(const Graph& g, SwapMode mode, const SolverConfig& cfg) {
  return mode == SwapMode::lambda2 ? lambda2(g, cfg) : lambda_min(g, cfg);
}

// lambda2 rises toward d as crossing edges vanish; lambda_n falls toward -d
// as within-part edges vanish.
bool reached(double value, double target, SwapMode mode) {
  return mode == SwapMode::lambda2 ? value >= target : value <= target;
}

std::string describe(const SwapMove& m) {
  return "swap " + std::to_string(m.v1) + "-" + std::to_string(m.v2) + "|" +
         std::to_string(m.u1) + "-" + std::to_string(m.u2);
}

// Eligible e1 candidates: crossing edges (lambda2) or within-part edges
// (lambda_min), in lexicographic order.
std::vector<Edge> candidates(const Graph& g, const std::vector<std::uint8_t>& side, SwapMode mode) {
  std::vector<Edge> out;
  for (Edge e : g.edges()) {
    const bool cross = side[e.u] != side[e.v];
    if (mode == SwapMode::lambda2 ? cross : !cross) out.push_back(e);
  }
  return out;
}

// Orients e so that v1 sits in part B (lambda2), or returns it as is.
SwapMove orient(Edge e1, Edge e2, const std::vector<std::uint8_t>& side, SwapMode mode) {
  if (mode == SwapMode::lambda2) {
    const Vertex v1 = side[e1.u] == 0 ? e1.u : e1.v;
    const Vertex v2 = v1 == e1.u ? e1.v : e1.u;
    const Vertex u1 = side[e2.u] == 0 ? e2.u : e2.v;
    const Vertex u2 = u1 == e2.u ? e2.v : e2.u;
    return {v1, v2, u1, u2};
  }
  // Within-part edges from opposite parts: every pairing crosses.
  return {e1.u, e1.v, e2.u, e2.v};
}

std::optional<std::pair<SwapMove, Length>> find_swap(const Graph& g,
                                                     const std::vector<std::uint8_t>& side,
                                                     SwapMode mode, std::size_t need) {
  const auto pool = candidates(g, side, mode);
  for (Edge e1 : pool) {
    const std::array<Vertex, 2> src{e1.u, e1.v};
    const auto dist = bfs_distances(g, src);
    for (Edge e2 : pool) {
      if (e2 == e1) continue;
      if (mode == SwapMode::lambda_min && side[e2.u] == side[e1.u]) continue;
      const Length dd = std::min(dist[e2.u], dist[e2.v]);
      if (dd < need || dd == 0) continue;
      const SwapMove m = orient(e1, e2, side, mode);
      if (g.has_edge(m.v1, m.u1) || g.has_edge(m.v2, m.u2)) continue;
      return std::make_pair(m, dd);
    }
  }
  return std::nullopt;
}

SwapInterpolation run(std::size_t n, std::size_t d, double target, const SwapOptions& opt,
                      SwapMode mode) {
  if (n % 2 != 0) fail(Errc::odd_vertex_count, "interpolation needs even n");
  if (d < 2 || d >= n) fail(Errc::invalid_argument, "interpolation: bad degree");
  if (mode == SwapMode::lambda2 && d < 3) fail(Errc::invalid_argument, "lambda2 interpolation needs d >= 3");
  const double thr = ramanujan_bound(d);

  SwapInterpolation out;
  out.mode = mode;
  GenerationPolicy pol;
  pol.seed = derive_seed(opt.seed, "start");
  pol.max_retries = opt.max_retries;
  pol.solver = opt.solver;
  if (opt.girth_floor > 0) pol.min_girth = opt.girth_floor;
  if (mode == SwapMode::lambda2) pol.lambda2_ceiling = thr + opt.start_ceiling_margin;
  else pol.lambda_min_floor = -thr - opt.start_ceiling_margin;
  Generated gen = generate_regular(n, d, pol);
  out.start_attempts = gen.attempts;
  out.start = gen.graph;
  out.bisection = bisect(out.start, derive_seed(opt.seed, "bisect"));
  const auto& side = out.bisection.side;

  const Length g0 = girth(out.start);
  const double rf = 0.25 * std::log(static_cast<double>(n) / 4.0) / std::log(static_cast<double>(d));
  const std::size_t r_girth = g0 == kInfinite ? n : (g0 - 1) / 2;
  out.r_formula = std::min(r_girth, static_cast<std::size_t>(std::max(0.0, std::floor(rf))));
  // A new edge between vertices at distance D closes cycles of length >= D+1.
  const std::size_t floor_need = opt.girth_floor > 0 ? opt.girth_floor - 1 : 1;
  out.required_distance = std::max<std::size_t>({2 * out.r_formula > 0 ? 2 * out.r_formula - 1 : 1,
                                                 floor_need, 1});

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  auto exhausted_level = [&](std::size_t crossing) {
    const std::size_t m = n * d / 2;
    return mode == SwapMode::lambda2 ? static_cast<double>(crossing) <= sqrt_n
                                     : static_cast<double>(m - crossing) <= 2.0 * sqrt_n;
  };

  Graph cur = out.start;
  std::size_t crossing = out.bisection.crossing_count;
  auto record = [&](std::size_t step, const std::string& what, const SwapMove& mv, double value,
                    Length dist) {
    SwapRecord rec;
    rec.step = step;
    rec.move = mv;
    rec.eigenvalue = value;
    rec.girth = girth(cur);
    rec.odd_girth = odd_girth(cur);
    rec.crossing = crossing;
    rec.partner_distance = dist;
    out.records.push_back(rec);
    out.trace.steps.push_back({step, what, value, rec.girth, crossing});
  };

  double value = tracked(cur, mode, opt.solver);
  record(0, "start", SwapMove{0, 0, 0, 0}, value, kInfinite);
  if (reached(value, target, mode)) out.crossed_step = 0;
  if (exhausted_level(crossing)) {
    out.exhaustion_step = 0;
    out.exhaustion_rayleigh = bisection_rayleigh(cur, side);
  }
  auto done = [&]() {
    if (!out.crossed_step) return false;
    return !opt.run_to_exhaustion || out.exhaustion_step.has_value();
  };

  std::size_t step = 0;
  out.stop_reason = "target-crossed";
  while (!done()) {
    auto found = find_swap(cur, side, mode, out.required_distance);
    if (!found) {
      out.stop_reason = "no-eligible-swap";
      break;
    }
    const auto [mv, dist] = *found;
    cur = swap(cur, mv);
    crossing = mode == SwapMode::lambda2 ? crossing - 2 : crossing + 2;
    ++step;
    value = tracked(cur, mode, opt.solver);
    record(step, describe(mv), mv, value, dist);
    if (!out.crossed_step && reached(value, target, mode)) out.crossed_step = step;
    if (!out.exhaustion_step && exhausted_level(crossing)) {
      out.exhaustion_step = step;
      out.exhaustion_rayleigh = bisection_rayleigh(cur, side);
    }
  }
  if (out.crossed_step && out.stop_reason == "target-crossed" && opt.run_to_exhaustion)
    out.stop_reason = "target-crossed-and-exhausted";
  out.terminal = cur;

  // Best step: the closer of the two graphs bracketing the first crossing,
  // or the closest seen when the target was never crossed.
  std::size_t best = 0;
  if (out.crossed_step) {
    const std::size_t c = *out.crossed_step;
    best = c;
    if (c > 0 && std::abs(out.trace.steps[c - 1].eigenvalue - target) <
                     std::abs(out.trace.steps[c].eigenvalue - target))
      best = c - 1;
  } else {
    for (std::size_t i = 1; i < out.trace.steps.size(); ++i)
      if (std::abs(out.trace.steps[i].eigenvalue - target) <
          std::abs(out.trace.steps[best].eigenvalue - target))
        best = i;
  }
  out.trace.target = target;
  out.trace.best_step = best;
  out.trace.achieved = out.trace.steps[best].eigenvalue;

  // Replay to the best step; swaps are deterministic so this is exact.
  Graph g = out.start;
  for (std::size_t i = 1; i <= best; ++i) g = swap(g, out.records[i].move);
  out.graph = std::move(g);
  return out;
}

}  // namespace

SwapInterpolation interpolate_lambda2(std::size_t n, std::size_t d, double target,
                                      const SwapOptions& opt) {
  const double thr = ramanujan_bound(d);
  if (target < thr - kGuard || target > static_cast<double>(d) + kGuard)
    fail(Errc::invalid_argument, "lambda2 target must lie in [2 sqrt(d-1), d]");
  return run(n, d, target, opt, SwapMode::lambda2);
}

SwapInterpolation interpolate_lambda_min(std::size_t n, std::size_t d, double target,
                                         const SwapOptions& opt) {
  const double thr = ramanujan_bound(d);
  if (target > -thr + kGuard || target < -static_cast<double>(d) - kGuard)
    fail(Errc::invalid_argument, "lambda_min target must lie in [-d, -2 sqrt(d-1)]");
  return run(n, d, target, opt, SwapMode::lambda_min);
}

DriftReport verify_swap_drift(const SwapInterpolation& run, std::size_t d) {
  DriftReport rep;
  const double thr = ramanujan_bound(d);
  for (std::size_t i = 1; i < run.records.size(); ++i) {
    const auto& a = run.records[i - 1];
    const auto& b = run.records[i];
    const double delta = std::abs(b.eigenvalue - a.eigenvalue);
    rep.max_drift = std::max(rep.max_drift, delta);
    if (std::max(std::abs(a.eigenvalue), std::abs(b.eigenvalue)) <= thr + kGuard) continue;
    const Length g = std::min(a.girth, b.girth);
    const double r = g == kInfinite ? INFINITY : static_cast<double>((g + 1) / 2);
    const double bound = 8.0 / r;
    ++rep.checked;
    rep.max_ratio = std::max(rep.max_ratio, delta / bound);
    if (delta > bound + kGuard) ++rep.violations;
  }
  return rep;
}

}  // namespace sforge
