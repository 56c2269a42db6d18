#include "spectralforge/verify.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "spectralforge/augment.hpp"
#include "spectralforge/construct/gadget.hpp"
#include "spectralforge/construct/join.hpp"
#include "spectralforge/construct/patch.hpp"
#include "spectralforge/construct/swap_interpolation.hpp"
#include "spectralforge/error.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/io.hpp"
#include "spectralforge/layers.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"
#include "spectralforge/walks.hpp"

namespace sforge {

namespace {

double thr_of(std::size_t d) { return ramanujan_bound(d); }

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

void normalize(std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n > 0)
    for (double& x : v) x /= n;
}

std::string fmt(double x) { return format_double(x); }

// ---- swap-drift ----

Certificate swap_drift(std::uint64_t seed, const SuiteOptions& opt) {
  SwapOptions so;
  so.seed = seed;
  so.solver = opt.solver;
  const double target = 2.95;
  auto up = interpolate_lambda2(opt.swap_n, 3, target, so);
  auto down = interpolate_lambda_min(opt.swap_n, 3, -target, so);
  auto a = verify_swap_drift(up, 3);
  auto b = verify_swap_drift(down, 3);
  Certificate c;
  c.name = "swap-drift";
  c.value = std::max(a.max_ratio, b.max_ratio);
  c.bound = 1.0;
  c.pass = a.violations == 0 && b.violations == 0;
  std::ostringstream os;
  os << "lambda2 steps " << up.records.size() << " checked " << a.checked << " max drift "
     << fmt(a.max_drift) << "; lambda_min steps " << down.records.size() << " checked "
     << b.checked << " max drift " << fmt(b.max_drift);
  c.detail = os.str();
  return c;
}

// ---- linf ----

void linf_on(const Graph& g, const SolverConfig& cfg, double& worst, std::size_t& checked,
             bool& pass) {
  const Length gi = girth(g);
  if (gi == kInfinite) return;
  const std::size_t r = (gi + 1) / 2;
  auto sp = spectrum(g, 3, 2, cfg, true);
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    auto rep = linf_bound_check(g, sp.eigenvalues[k], sp.eigenvectors[k], r);
    if (!rep.applicable) continue;
    ++checked;
    worst = std::max(worst, rep.max_entry / rep.bound);
    pass = pass && rep.pass;
  }
}

Certificate linf(std::uint64_t seed, const SuiteOptions& opt) {
  SwapOptions so;
  so.seed = seed;
  so.solver = opt.solver;
  auto up = interpolate_lambda2(opt.swap_n, 3, 2.95, so);
  auto down = interpolate_lambda_min(opt.swap_n, 3, -2.95, so);
  double worst = 0.0;
  std::size_t checked = 0;
  bool pass = true;
  for (const Graph* g : {&up.start, &up.graph, &up.terminal, &down.graph, &down.terminal})
    linf_on(*g, opt.solver, worst, checked, pass);
  Certificate c;
  c.name = "linf";
  c.value = worst;
  c.bound = 1.0;
  c.pass = pass && checked > 0;
  c.detail = "eigenvectors checked " + std::to_string(checked) + ", value is max ||x||inf sqrt(r)";
  return c;
}

// ---- walk-count ----

Graph walk_graph(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = pick(rng, 4, 60);
  if (rng.below(2) == 0) {
    std::size_t d = pick(rng, 2, 5);
    if (d >= n) d = n - 1;
    if ((n * d) % 2 != 0) --d;
    if (d >= 2) {
      GenerationPolicy p;
      p.seed = derive_seed(seed, "regular");
      return random_regular(n, d, p);
    }
  }
  const double prob = 0.05 + 0.35 * rng.uniform();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < prob) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Certificate walk_count(std::uint64_t seed, const SuiteOptions&) {
  const Graph g = walk_graph(seed);
  const auto ev = full_spectrum(g);
  const double top = ev.empty() ? 0.0 : std::max(ev.front(), -ev.back());
  const double q = static_cast<double>(g.vertex_count());
  double worst = 0.0;
  bool bounds = true;
  std::ostringstream os;
  os << "n " << g.vertex_count() << " m " << g.edge_count();
  for (std::size_t len : {2u, 4u, 6u}) {
    const BigInt t = closed_walk_count(g, len);
    const double exact = t.get_d();
    double sum = 0.0;
    for (double x : ev) sum += std::pow(x, static_cast<double>(len));
    const double rel = std::abs(sum - exact) / std::max(exact, 1.0);
    worst = std::max(worst, rel);
    const double hi = big_root(t, len);
    const double lo = std::pow(exact / q, 1.0 / static_cast<double>(len));
    const double tol = 1e-9 * std::max(1.0, top);
    if (lo > top + tol || top > hi + tol) bounds = false;
    os << "; l=" << len << " T=" << t.get_str() << " [" << fmt(lo) << ", " << fmt(hi) << "]";
  }
  Certificate c;
  c.name = "walk-count";
  c.value = worst;
  c.bound = 1e-6;
  c.pass = worst <= 1e-6 && bounds;
  c.detail = os.str() + (bounds ? "" : "; lambda1 outside walk bounds");
  return c;
}

// ---- secular-transfer ----

Certificate secular_transfer(std::uint64_t seed, const SuiteOptions&) {
  const auto inst = augment_instance(seed);
  AugmentationSpec spec{inst.d, inst.s, inst.levels, true};
  const auto aug = augment_s(inst.core, spec);
  const double thr = thr_of(inst.d);
  const double band = 1e-6;

  const auto core = spectrum(inst.core, inst.core.vertex_count(), 0, SolverConfig{}, true);
  const auto transfer = tree_transfer_eigenvalues(core.eigenvalues, inst.d, inst.s, inst.levels);
  const auto built = spectrum(aug.graph, aug.graph.vertex_count(), 0, SolverConfig{}, true);

  std::vector<double> want, got;
  for (double x : transfer)
    if (x > thr + band) want.push_back(x);
  for (double x : built.eigenvalues)
    if (x > thr + band) got.push_back(x);
  double match = want.size() == got.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(want.size(), got.size()); ++i)
    match = std::max(match, std::abs(want[i] - got[i]));

  const SymmetricOperator op(aug.graph);
  double resid = 0.0;
  for (std::size_t k = 0; k < core.eigenvalues.size(); ++k) {
    const double mu = core.eigenvalues[k];
    const double one[1] = {mu};
    for (double lam : tree_transfer_eigenvalues(one, inst.d, inst.s, inst.levels)) {
      auto v = radial_extension(core.eigenvectors[k], lam, aug);
      normalize(v);
      resid = std::max(resid, residual_norm(op, v, lam));
    }
  }

  double spread = 0.0;
  for (std::size_t k = 0; k < built.eigenvalues.size(); ++k) {
    if (!(built.eigenvalues[k] > thr + band)) break;
    auto v = built.eigenvectors[k];
    normalize(v);
    std::map<std::pair<Vertex, std::size_t>, std::pair<double, double>> range;
    for (Vertex u = 0; u < v.size(); ++u) {
      auto key = std::make_pair(aug.anchor[u], aug.depth[u]);
      auto it = range.find(key);
      if (it == range.end())
        range.emplace(key, std::make_pair(v[u], v[u]));
      else
        it->second = {std::min(it->second.first, v[u]), std::max(it->second.second, v[u])};
    }
    for (const auto& [key, mm] : range) spread = std::max(spread, mm.second - mm.first);
  }

  Certificate c;
  c.name = "secular-transfer";
  c.value = std::max(match, resid);
  c.bound = 1e-8;
  c.pass = match <= 1e-8 && resid <= 1e-8 && spread <= 1e-7;
  std::ostringstream os;
  os << "d " << inst.d << " s " << inst.s << " l " << inst.levels << " n " << inst.core.vertex_count()
     << " above " << got.size() << " match " << fmt(match) << " residual " << fmt(resid)
     << " level spread " << fmt(spread) << " (bound 1e-7)";
  c.detail = os.str();
  return c;
}

// ---- layers ----

Certificate layers(std::uint64_t seed, const SuiteOptions&) {
  const auto inst = augment_instance(seed);
  AugmentationSpec spec{inst.d, inst.s, inst.levels, true};
  const auto aug = augment_s(inst.core, spec);
  const double thr = thr_of(inst.d);
  auto sp = spectrum(aug.graph, 1, 0, SolverConfig{}, true);
  Certificate c;
  c.name = "layers";
  c.bound = 1e-9;
  if (!(sp.eigenvalues[0] > thr + kGuard)) {
    c.pass = true;
    c.detail = "not-applicable: lambda1 " + fmt(sp.eigenvalues[0]) + " <= 2 sqrt(d-1)";
    return c;
  }
  const auto dec = level_decomposition(aug.graph, aug.core, inst.levels, sp.eigenvectors[0]);
  const auto rep = check_layer_inequalities(dec, inst.d, 1e-9);
  c.value = rep.instances.empty() ? 0.0 : std::max(0.0, -rep.min_slack);
  c.pass = rep.pass;
  c.detail = "instances " + std::to_string(rep.instances.size()) + " min slack " +
             fmt(rep.min_slack) + " lambda1 " + fmt(sp.eigenvalues[0]);
  return c;
}

// ---- join-drift ----

Certificate join_drift(std::uint64_t seed, const SuiteOptions& opt) {
  Rng rng(seed);
  const std::size_t k = pick(rng, 2, 3);
  std::vector<Graph> parts;
  for (std::size_t j = 0; j < k; ++j) {
    GenerationPolicy p;
    p.seed = derive_seed(seed, j);
    p.min_girth = 5;
    const std::size_t n = 2 * pick(rng, 10, 30);
    parts.push_back(delete_vertex(random_regular(n, 3, p), 0).graph);
  }
  const auto joined = chain_join(parts, 3);
  const auto rep = verify_join_drift(parts, joined, 3, k, opt.solver);
  Certificate c;
  c.name = "join-drift";
  c.bound = 1.0;
  std::size_t applicable = 0;
  for (const auto& e : rep.entries) {
    if (!e.applicable) continue;
    ++applicable;
    c.value = std::max(c.value, std::abs(e.joined - e.merged) / e.bound);
  }
  c.pass = rep.pass;
  c.detail = "parts " + std::to_string(k) + " r " + std::to_string(rep.r) + " applicable " +
             std::to_string(applicable) + ", value is max |lambda_i - mu_i| / bound";
  return c;
}

// ---- patch-pinning ----

Certificate patch_pinning(std::uint64_t seed, const SuiteOptions& opt) {
  const std::size_t d = 3;
  const double thr = thr_of(d);
  GenerationPolicy hp;
  hp.seed = derive_seed(seed, "host");
  hp.min_girth = 6;
  hp.lambda2_ceiling = thr + 0.1;
  hp.solver = opt.solver;
  PatchPlan plan;
  plan.d = d;
  plan.radius = 4;
  plan.host = random_regular(opt.host_n, d, hp);

  Graph gadget;
  double mu = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    GenerationPolicy gp;
    gp.seed = derive_seed(derive_seed(seed, "gadget"), t);
    gp.min_girth = 5;
    auto h = delete_vertex(random_regular(40, d, gp), 0).graph;
    mu = lambda1(h);
    if (mu > thr + kGuard && mu < 3.0) {
      gadget = std::move(h);
      break;
    }
  }
  if (gadget.vertex_count() == 0) fail(Errc::retries_exhausted, "patch-pinning: no gadget");
  plan.gadgets.push_back(gadget);
  plan.patch_vertices = select_patch_vertices(plan.host, slot_count(gadget, d) / d, plan.radius);
  const auto res = patch(plan);
  const auto rep = verify_patch_pinning(plan, res, opt.solver);
  Certificate c;
  c.name = "patch-pinning";
  c.value = rep.entries.size() > 1 ? std::abs(rep.entries[1].lambda - rep.entries[1].mu) : 0.0;
  c.bound = rep.bound;
  c.pass = rep.pin_pass && rep.lower_pass && rep.upper_pass;
  c.detail = "mu1 " + fmt(mu) + " host girth " + format_length(rep.host_girth) +
             (rep.host_girth_ok ? "" : " (below 8R)") +
             (rep.spectral_order_ok ? "" : "; spectral order hypothesis not met");
  return c;
}

// ---- saturation ----

Certificate saturation(std::uint64_t seed, const SuiteOptions& opt) {
  const std::size_t d = 4;
  const double eps = 0.25;
  const double thr = thr_of(d);
  const auto j = static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(d - 1.0) / eps));
  Certificate c;
  c.name = "saturation";
  c.bound = eps;
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t n = 2 * pick(rng, 5, 15);
    GenerationPolicy p;
    p.seed = derive_seed(seed, 1000 + t);
    auto g = random_regular(n, d, p);
    std::vector<Vertex> drop(pick(rng, 1, 3));
    for (std::size_t i = 0; i < drop.size(); ++i) drop[i] = static_cast<Vertex>(i * (n / drop.size()));
    const Graph h = delete_vertices(g, drop).graph;
    const auto [once, above] = augmented_top(h, d, j, opt.solver);
    if (!above || once < thr + eps) continue;
    const auto [twice, above2] = augmented_top(h, d, 2 * j, opt.solver);
    c.value = twice - once;
    c.pass = above2 && c.value <= eps && c.value >= -1e-9;
    c.detail = "J " + std::to_string(j) + " n " + std::to_string(h.vertex_count()) + " T^J " +
               fmt(once) + " T^2J " + fmt(twice);
    return c;
  }
  c.pass = true;
  c.detail = "not-applicable: no instance reached 2 sqrt(d-1) + eps";
  return c;
}

// ---- lambda2-ceiling ----

Certificate lambda2_ceiling(std::uint64_t seed, const SuiteOptions&) {
  Certificate c;
  c.name = "lambda2-ceiling";
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t d = pick(rng, 3, 5);
    const std::size_t s = pick(rng, 1, std::min<std::size_t>(2, d - 2));
    const double eps = std::array<double, 3>{0.0, 0.1, 0.5}[rng.below(3)];
    const std::size_t levels = pick(rng, 2, 3);
    const std::size_t k = d - s;
    std::size_t n = pick(rng, k + 2, 14);
    if ((n * k) % 2 != 0) ++n;
    GenerationPolicy p;
    p.seed = derive_seed(seed, 1000 + t);
    p.require_connected = true;
    const Graph core = random_regular(n, k, p);
    const double l2 = lambda2(core);
    const auto verdict = lambda2_ceiling_after_augment(l2, d, s, eps);
    if (!verdict.below) continue;
    AugmentationSpec spec{d, s, levels};
    const auto aug = augment_s(core, spec);
    const double got = lambda2(aug.graph);
    c.value = got;
    c.bound = verdict.ceiling;
    c.pass = got < verdict.ceiling;
    std::ostringstream os;
    os << "d " << d << " s " << s << " eps " << eps << " l " << levels << " n " << n
       << " lambda2(core) " << fmt(l2) << " hypothesis threshold " << fmt(verdict.threshold);
    c.detail = os.str();
    return c;
  }
  fail(Errc::retries_exhausted, "lambda2-ceiling: no instance met the hypothesis");
}

using SuiteFn = Certificate (*)(std::uint64_t, const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"swap-drift", swap_drift},         {"linf", linf},
      {"walk-count", walk_count},         {"layers", layers},
      {"join-drift", join_drift},         {"secular-transfer", secular_transfer},
      {"patch-pinning", patch_pinning},   {"saturation", saturation},
      {"lambda2-ceiling", lambda2_ceiling},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "swap-drift",       "linf",          "walk-count", "layers",          "join-drift",
      "secular-transfer", "patch-pinning", "saturation", "lambda2-ceiling",
  };
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) != 0; }

Graph random_capped_graph(std::size_t n, std::size_t cap, std::uint64_t seed) {
  if (n == 0) return Graph();
  if (cap == 0 && n > 1) fail(Errc::invalid_argument, "capped graph: cap 0 cannot connect");
  if (cap == 1 && n > 2) fail(Errc::invalid_argument, "capped graph: cap 1 allows n <= 2");
  Rng rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> edges;
  auto has = [&](Vertex a, Vertex b) {
    return std::find(edges.begin(), edges.end(), Edge::make(a, b)) != edges.end();
  };
  for (Vertex v = 1; v < n; ++v) {
    std::vector<Vertex> open;
    for (Vertex u = 0; u < v; ++u)
      if (deg[u] < cap) open.push_back(u);
    const Vertex u = open[rng.below(open.size())];
    edges.push_back(Edge::make(u, v));
    ++deg[u];
    ++deg[v];
  }
  for (std::size_t t = 0; t < n * cap; ++t) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a == b || deg[a] >= cap || deg[b] >= cap || has(a, b)) continue;
    edges.push_back(Edge::make(a, b));
    ++deg[a];
    ++deg[b];
  }
  return Graph::from_edges(n, edges);
}

AugmentInstance augment_instance(std::uint64_t seed) {
  Rng rng(seed);
  AugmentInstance inst;
  inst.d = pick(rng, 3, 4);
  inst.s = pick(rng, 1, 2);
  inst.levels = pick(rng, 2, 4);
  // Core degrees are free here, so dense cores push eigenvalues past
  // 2 sqrt(d-1); with the cap d-s no level count up to 4 gets there.
  const std::size_t n = pick(rng, 2, 10);
  const std::size_t cap = n == 2 ? 1 : pick(rng, 2, n - 1);
  inst.core = random_capped_graph(n, cap, derive_seed(seed, "core"));
  return inst;
}

Certificate run_instance(const std::string& name, std::uint64_t seed, const SuiteOptions& opt) {
  auto it = registry().find(name);
  if (it == registry().end()) fail(Errc::invalid_argument, "unknown suite: " + name);
  return it->second(seed, opt);
}

std::vector<Certificate> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (!is_suite(name)) fail(Errc::invalid_argument, "unknown suite: " + name);
  std::vector<Certificate> out(opt.seeds);
  std::vector<std::exception_ptr> errors(opt.seeds);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < opt.seeds; i = next++) {
      try {
        out[i] = run_instance(name, derive_seed(opt.seed, i), opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, std::max<std::size_t>(opt.seeds, 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t i = 0; i < opt.seeds; ++i) out[i].name = name + "[" + std::to_string(i) + "]";
  return out;
}

}  // namespace sforge
