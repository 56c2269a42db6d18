#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "spectralforge/augment.hpp"
#include "spectralforge/construct/deletion.hpp"
#include "spectralforge/construct/gadget.hpp"
#include "spectralforge/construct/localized.hpp"
#include "spectralforge/construct/patch.hpp"
#include "spectralforge/construct/swap_interpolation.hpp"
#include "spectralforge/error.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/io.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/verify.hpp"

namespace fs = std::filesystem;
using namespace sforge;
using forge::json;
using forge::Report;

namespace {

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  std::string out = "out";
  std::size_t jobs = 1;
  bool wall_time = false;
};

struct Context {
  const Globals& g;
  Report& rep;
  fs::path dir() const { return g.out; }
  void emit(const std::string& name, const std::string& content) {
    forge::emit(rep, g.out, name, content);
  }
};

using Handler = std::function<void(Context&)>;

std::string join_doubles(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_double(xs[i]);
  }
  return s;
}

json doubles(const std::vector<double>& xs) { return json(xs); }

// ---- gen ----

struct GenArgs {
  std::size_t n = 0;
  std::size_t d = 3;
  std::string kind = "regular";
  std::string base;
  std::size_t fold = 2;
  std::size_t min_girth = 0;
  std::optional<double> ceiling;
  bool connected = false;
  std::size_t retries = 1000;
};

Handler add_gen(CLI::App& app) {
  auto a = std::make_shared<GenArgs>();
  auto* c = app.add_subcommand("gen", "random regular, bipartite regular, or lifted graph");
  c->add_option("--n", a->n, "vertices (regular, bipartite)");
  c->add_option("--d", a->d, "degree");
  c->add_option("--kind", a->kind)->check(CLI::IsMember({"regular", "bipartite", "lift"}));
  c->add_option("--base", a->base, "base graph file (lift)");
  c->add_option("--fold", a->fold, "lift fold N");
  c->add_option("--min-girth", a->min_girth, "0 for none");
  c->add_option("--lambda2-ceiling", a->ceiling);
  c->add_flag("--connected", a->connected);
  c->add_option("--max-retries", a->retries);
  return [a](Context& ctx) {
    GenerationPolicy p;
    p.seed = ctx.g.seed;
    if (a->min_girth) p.min_girth = a->min_girth;
    p.lambda2_ceiling = a->ceiling;
    p.require_connected = a->connected;
    p.max_retries = a->retries;
    Generated gen;
    std::size_t d = a->d;
    if (a->kind == "lift") {
      if (a->base.empty()) fail(Errc::invalid_argument, "gen: --base is required for lift");
      const Graph base = read_graph_file(a->base);
      d = base.max_degree();
      gen = generate_lift(base, a->fold, p);
    } else {
      if (a->n == 0) fail(Errc::invalid_argument, "gen: --n is required");
      gen = a->kind == "bipartite" ? generate_bipartite_regular(a->n, d, p)
                                   : generate_regular(a->n, d, p);
    }
    const Graph& g = gen.graph;
    ctx.emit("graph.txt", serialize_graph(g));
    auto& r = ctx.rep.results;
    r["vertices"] = g.vertex_count();
    r["edges"] = g.edge_count();
    r["attempts"] = gen.attempts;
    const Length gi = girth(g);
    r["girth"] = forge::length_json(gi);
    if (a->kind != "lift")
      ctx.rep.certify("regular", static_cast<double>(g.max_degree()), static_cast<double>(d),
                      g.is_regular(d));
    if (a->min_girth)
      ctx.rep.certify("girth", gi == kInfinite ? INFINITY : static_cast<double>(gi),
                      static_cast<double>(a->min_girth), gi >= a->min_girth);
    if (a->ceiling) {
      const double l2 = lambda2(g);
      r["lambda2"] = l2;
      ctx.rep.certify("lambda2", l2, *a->ceiling, l2 <= *a->ceiling);
    }
  };
}

// ---- girth ----

Handler add_girth(CLI::App& app) {
  auto path = std::make_shared<std::string>();
  auto* c = app.add_subcommand("girth", "girth, odd girth and basic structure of a graph file");
  c->add_option("--graph", *path)->required();
  return [path](Context& ctx) {
    const Graph g = read_graph_file(*path);
    auto& r = ctx.rep.results;
    r["vertices"] = g.vertex_count();
    r["edges"] = g.edge_count();
    r["min_degree"] = g.vertex_count() ? g.min_degree() : 0;
    r["max_degree"] = g.max_degree();
    r["girth"] = forge::length_json(girth(g));
    r["odd_girth"] = forge::length_json(odd_girth(g));
    r["connected"] = is_connected(g);
    r["bipartite"] = is_bipartite(g);
    const auto bad = validate(g);
    ctx.rep.certify("valid", bad ? 0.0 : 1.0, 1.0, !bad, bad.value_or(""));
  };
}

// ---- spectrum ----

struct SpectrumArgs {
  std::string graph;
  std::size_t top = 0;
  std::size_t bottom = 0;
  bool vectors = false;
  std::size_t dense_cutoff = 4096;
};

Handler add_spectrum(CLI::App& app) {
  auto a = std::make_shared<SpectrumArgs>();
  auto* c = app.add_subcommand("spectrum", "extreme or full adjacency spectrum");
  c->add_option("--graph", a->graph)->required();
  c->add_option("--top", a->top, "largest eigenvalues; with --bottom 0 and --top 0, all");
  c->add_option("--bottom", a->bottom);
  c->add_flag("--vectors", a->vectors, "write eigenvectors.csv");
  c->add_option("--dense-cutoff", a->dense_cutoff);
  return [a](Context& ctx) {
    const Graph g = read_graph_file(a->graph);
    std::size_t top = a->top, bottom = a->bottom;
    if (top == 0 && bottom == 0) top = g.vertex_count();
    SolverConfig cfg;
    cfg.dense_cutoff = a->dense_cutoff;
    auto sp = spectrum(g, top, bottom, cfg, true);
    auto& r = ctx.rep.results;
    r["eigenvalues"] = doubles(sp.eigenvalues);
    r["method"] = method_name(sp.method);
    double worst = 0.0;
    for (double x : sp.residual_norms) worst = std::max(worst, x);
    ctx.rep.certify("residual", worst, 1e-6, worst <= 1e-6);
    if (a->vectors) {
      std::string csv;
      for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k)
        csv += format_double(sp.eigenvalues[k]) + "," + join_doubles(sp.eigenvectors[k]) + "\n";
      ctx.emit("eigenvectors.csv", csv);
    }
  };
}

// ---- interp-l2 / interp-lmin ----

struct SwapArgs {
  std::size_t n = 1000;
  std::size_t d = 3;
  std::optional<double> target;
  std::size_t girth_floor = 6;
  double margin = 0.1;
  bool exhaust = false;
};

Handler add_swap(CLI::App& app, SwapMode mode) {
  auto a = std::make_shared<SwapArgs>();
  const bool up = mode == SwapMode::lambda2;
  auto* c = app.add_subcommand(up ? "interp-l2" : "interp-lmin",
                               up ? "swap interpolation of lambda2" : "swap interpolation of lambda_n");
  c->add_option("--n", a->n);
  c->add_option("--d", a->d);
  c->add_option("--target", a->target, up ? "default d - 0.05" : "default -(d - 0.05)");
  c->add_option("--girth-floor", a->girth_floor, "0 disables");
  c->add_option("--margin", a->margin, "start lambda2 ceiling above 2 sqrt(d-1)");
  c->add_flag("--exhaust", a->exhaust, "continue to the exhaustion level");
  return [a, up](Context& ctx) {
    const double dd = static_cast<double>(a->d);
    const double target = a->target.value_or(up ? dd - 0.05 : -(dd - 0.05));
    SwapOptions o;
    o.seed = ctx.g.seed;
    o.girth_floor = a->girth_floor;
    o.start_ceiling_margin = a->margin;
    o.run_to_exhaustion = a->exhaust;
    auto run = up ? interpolate_lambda2(a->n, a->d, target, o)
                  : interpolate_lambda_min(a->n, a->d, target, o);
    ctx.emit("graph.txt", serialize_graph(run.graph));
    ctx.emit("trace.csv", trace_csv(run.trace));
    if (a->exhaust) ctx.emit("terminal.txt", serialize_graph(run.terminal));
    const auto drift = verify_swap_drift(run, a->d);
    const double step_max = max_step_drift(run.trace);
    auto& r = ctx.rep.results;
    r["target"] = target;
    r["achieved"] = run.trace.achieved;
    r["steps"] = run.records.empty() ? 0 : run.records.size() - 1;
    r["best_step"] = run.trace.best_step;
    r["crossed_step"] = run.crossed_step ? json(*run.crossed_step) : json(nullptr);
    r["stop_reason"] = run.stop_reason;
    r["partner_distance"] = run.required_distance;
    r["r_formula"] = run.r_formula;
    r["start_attempts"] = run.start_attempts;
    r["max_step_drift"] = step_max;
    r["drift_checked"] = drift.checked;
    if (!up) {
      json og = json::array();
      for (const auto& rec : run.records) og.push_back(forge::length_json(rec.odd_girth));
      r["odd_girth"] = std::move(og);
    }
    ctx.rep.certify("swap-drift", drift.max_ratio, 1.0, drift.violations == 0,
                    std::to_string(drift.violations) + " violations of 8/r");
    const double gap = std::abs(run.trace.achieved - target);
    ctx.rep.certify("target", gap, step_max, run.crossed_step.has_value() && gap <= step_max,
                    "|achieved - target| against the largest step drift");
    if (a->exhaust) {
      const double sq = std::sqrt(static_cast<double>(a->n));
      r["exhaustion_step"] = run.exhaustion_step ? json(*run.exhaustion_step) : json(nullptr);
      r["exhaustion_rayleigh"] = run.exhaustion_rayleigh;
      if (up) {
        const double bound = dd - 4.0 / sq;
        ctx.rep.certify("exhaustion", run.exhaustion_rayleigh, bound,
                        run.exhaustion_step.has_value() && run.exhaustion_rayleigh >= bound,
                        "bisection Rayleigh quotient >= d - 4/sqrt(n)");
      } else {
        const double bound = -dd + 8.0 / sq;
        ctx.rep.certify("exhaustion", run.exhaustion_rayleigh, bound,
                        run.exhaustion_step.has_value() && run.exhaustion_rayleigh <= bound,
                        "bisection Rayleigh quotient <= -d + 8/sqrt(n)");
      }
    }
  };
}

// ---- delete-interp ----

struct DeleteArgs {
  std::size_t n = 256;
  std::size_t d = 3;
  double target = 2.9;
  bool connected = false;
  std::size_t walk_cap = 64;
  std::size_t min_girth = 0;
};

Handler add_delete(CLI::App& app) {
  auto a = std::make_shared<DeleteArgs>();
  auto* c = app.add_subcommand("delete-interp", "vertex deletion interpolation of lambda1");
  c->add_option("--n", a->n);
  c->add_option("--d", a->d);
  c->add_option("--target", a->target);
  c->add_flag("--connected", a->connected, "delete BFS-tree leaves only");
  c->add_option("--walk-cap", a->walk_cap);
  c->add_option("--min-girth", a->min_girth, "start graph girth, 0 for none");
  return [a](Context& ctx) {
    DeletionOptions o;
    o.seed = ctx.g.seed;
    o.connected = a->connected;
    o.walk_cap = a->walk_cap;
    if (a->min_girth) o.min_girth = a->min_girth;
    auto run = deletion_interpolate(a->n, a->d, a->target, o);
    ctx.emit("graph.txt", serialize_graph(run.graph));
    ctx.emit("trace.csv", trace_csv(run.trace));
    const double thr = ramanujan_bound(a->d);
    double max_l2 = -INFINITY, rise = 0.0, min_factor = 1.0;
    bool connected = true;
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      const auto& rec = run.records[i];
      max_l2 = std::max(max_l2, rec.lambda2);
      if (i) {
        rise = std::max(rise, rec.lambda1 - run.records[i - 1].lambda1);
        min_factor = std::min(min_factor, rec.certified_factor);
      }
      connected = connected && rec.connected;
    }
    auto& r = ctx.rep.results;
    r["target"] = a->target;
    r["achieved"] = run.trace.achieved;
    r["steps"] = run.records.empty() ? 0 : run.records.size() - 1;
    r["vertices"] = run.graph.vertex_count();
    r["crossed_step"] = run.crossed_step ? json(*run.crossed_step) : json(nullptr);
    r["certified_gap"] = run.certified_gap;
    r["min_certified_factor"] = min_factor;
    r["stop_reason"] = run.stop_reason;
    r["start_attempts"] = run.start_attempts;
    const double gap = std::abs(run.trace.achieved - a->target);
    ctx.rep.certify("target", gap, run.certified_gap,
                    run.crossed_step.has_value() && gap <= run.certified_gap,
                    "bound from the certified walk factor at the crossing step");
    ctx.rep.certify("interlacing", max_l2, thr + 1e-6, max_l2 <= thr + 1e-6,
                    "largest lambda2 along the trace");
    ctx.rep.certify("monotone", rise, 1e-9, rise <= 1e-9, "largest lambda1 increase");
    if (a->connected) ctx.rep.certify("connected", connected ? 1.0 : 0.0, 1.0, connected);
  };
}

// ---- augment ----

struct AugmentArgs {
  std::string graph;
  std::size_t d = 3;
  std::size_t levels = 1;
  std::optional<std::size_t> s;
  bool excess = false;
};

Handler add_augment(CLI::App& app) {
  auto a = std::make_shared<AugmentArgs>();
  auto* c = app.add_subcommand("augment", "T^l(d) or T_s^l(d) augmentation of a graph file");
  c->add_option("--graph", a->graph)->required();
  c->add_option("--d", a->d);
  c->add_option("--levels", a->levels);
  c->add_option("--s", a->s, "trees per vertex; omit for the deficiency-driven form");
  c->add_flag("--allow-excess-degree", a->excess, "with --s, skip the degree cap");
  return [a](Context& ctx) {
    const Graph h = read_graph_file(a->graph);
    AugmentationSpec spec{a->d, a->s, a->levels, a->excess};
    const auto aug = augment_s(h, spec);
    ctx.emit("graph.txt", serialize_graph(aug.graph));
    ctx.emit("augmentation.json", augmentation_sidecar(aug));
    auto& r = ctx.rep.results;
    r["core"] = h.vertex_count();
    r["vertices"] = aug.graph.vertex_count();
    r["leaves"] = aug.leaf_count;
    if (!a->excess)
      ctx.rep.certify("degree", static_cast<double>(aug.graph.max_degree()),
                      static_cast<double>(a->d), aug.graph.max_degree() <= a->d);
    const double thr = ramanujan_bound(a->d);
    std::optional<double> transfer;
    if (a->s) {
      const auto t = tree_transfer_eigenvalues(full_spectrum(h), a->d, *a->s, a->levels);
      if (!t.empty()) transfer = t.front();
    } else {
      transfer = augmented_eigenvalue(h, a->d, a->levels, 1);
    }
    const double direct = lambda1(aug.graph);
    r["lambda1"] = direct;
    r["transfer_lambda1"] = transfer ? json(*transfer) : json(nullptr);
    if (transfer) {
      const double diff = std::abs(*transfer - direct);
      ctx.rep.certify("transfer", diff, 1e-8, diff <= 1e-8,
                      "direct lambda1 against the transfer computation");
    } else {
      ctx.rep.certify("transfer", direct, thr, direct <= thr + 1e-8,
                      "no transfer root: direct lambda1 must not exceed 2 sqrt(d-1)");
    }
  };
}

// ---- secular ----

struct SecularArgs {
  double mu = 0.0;
  std::size_t d = 3;
  std::size_t s = 1;
  std::size_t levels = 3;
};

Handler add_secular(CLI::App& app) {
  auto a = std::make_shared<SecularArgs>();
  auto* c = app.add_subcommand("secular", "solve lambda - s a_{l-1}/a_l = mu");
  c->add_option("--mu", a->mu)->required();
  c->add_option("--d", a->d);
  c->add_option("--s", a->s);
  c->add_option("--levels", a->levels);
  return [a](Context& ctx) {
    const auto lam = secular_solve(a->mu, a->d, a->s, a->levels);
    auto& r = ctx.rep.results;
    r["mu"] = a->mu;
    r["threshold"] = ramanujan_bound(a->d);
    r["lambda"] = lam ? json(*lam) : json(nullptr);
    if (lam && a->s > 0 && a->levels > 0) {
      SecularFunction f(a->d, a->s, a->levels);
      const double resid = std::abs(f.h(*lam) - a->mu);
      ctx.rep.certify("secular-residual", resid, 1e-9, resid <= 1e-9);
    }
  };
}

// ---- patch ----

struct PatchArgs {
  std::string host;
  std::size_t host_n = 0;
  std::vector<std::string> gadgets;
  std::size_t d = 3;
  std::size_t radius = 4;
  std::vector<Vertex> vertices;
};

Handler add_patch(CLI::App& app) {
  auto a = std::make_shared<PatchArgs>();
  auto* c = app.add_subcommand("patch", "R-patch gadgets into a regular host");
  c->add_option("--host", a->host, "host graph file");
  c->add_option("--host-n", a->host_n, "generate a host instead: girth >= 6, near-Ramanujan");
  c->add_option("--gadget", a->gadgets, "gadget graph file, repeatable")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  c->add_option("--d", a->d);
  c->add_option("--radius", a->radius);
  c->add_option("--vertices", a->vertices, "patch vertices; default greedy far-point")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  return [a](Context& ctx) {
    PatchPlan plan;
    plan.d = a->d;
    plan.radius = a->radius;
    if (!a->host.empty()) {
      plan.host = read_graph_file(a->host);
    } else if (a->host_n) {
      GenerationPolicy p;
      p.seed = derive_seed(ctx.g.seed, "host");
      p.min_girth = 6;
      p.lambda2_ceiling = ramanujan_bound(a->d) + 0.1;
      plan.host = random_regular(a->host_n, a->d, p);
    } else {
      fail(Errc::invalid_argument, "patch: --host or --host-n is required");
    }
    std::size_t slots = 0;
    for (const auto& path : a->gadgets) {
      plan.gadgets.push_back(read_graph_file(path));
      slots += slot_count(plan.gadgets.back(), a->d);
    }
    plan.patch_vertices = a->vertices.empty()
                              ? select_patch_vertices(plan.host, slots / a->d, a->radius)
                              : a->vertices;
    const auto res = patch(plan);
    ctx.emit("graph.txt", serialize_graph(res.graph));
    const auto rep = verify_patch_pinning(plan, res);
    auto& r = ctx.rep.results;
    r["vertices"] = res.graph.vertex_count();
    r["patch_vertices"] = plan.patch_vertices;
    r["slots"] = res.slot_count;
    r["host_girth"] = forge::length_json(rep.host_girth);
    r["host_girth_ok"] = rep.host_girth_ok;
    r["spectral_order_ok"] = rep.spectral_order_ok;
    r["gadget_lambda1"] = doubles(rep.gadget_lambda1);
    r["lambda2s"] = doubles(rep.lambda2s);
    json entries = json::array();
    double pin = 0.0, low = INFINITY, up = INFINITY;
    for (const auto& e : rep.entries) {
      entries.push_back({{"i", e.index}, {"lambda", e.lambda}, {"mu", e.mu}, {"lower", e.lower},
                         {"upper", e.upper}});
      if (e.index >= 2) pin = std::max(pin, std::abs(e.lambda - e.mu));
      low = std::min(low, e.lambda - e.lower);
      up = std::min(up, e.upper - e.lambda);
    }
    r["entries"] = std::move(entries);
    ctx.rep.certify("pinning", pin, rep.bound, rep.pin_pass, "|lambda_i - mu_{i-1}|, i >= 2");
    ctx.rep.certify("lower", low, 0.0, rep.lower_pass, "min lambda_i - lower_i");
    ctx.rep.certify("upper", up, 0.0, rep.upper_pass, "min upper_i - lambda_i");
  };
}

// ---- gadget ----

struct GadgetArgs {
  std::string mode = "simple";
  std::size_t d = 3;
  std::optional<double> target;
  double eps = 0.1;
  double eps1 = 0.15;
  double eps2 = 0.09;
  std::size_t n0 = 200;
  std::size_t start_n = 200;
  std::size_t fold = 40;
  std::size_t min_girth = 0;
};

Handler add_gadget(CLI::App& app) {
  auto a = std::make_shared<GadgetArgs>();
  auto* c = app.add_subcommand("gadget", "gadget search by vertex deletion");
  c->add_option("--mode", a->mode)->check(CLI::IsMember({"simple", "lift", "bipartite"}));
  c->add_option("--d", a->d);
  c->add_option("--target", a->target, "simple and lift modes");
  c->add_option("--eps", a->eps);
  c->add_option("--eps1", a->eps1, "bipartite mode");
  c->add_option("--eps2", a->eps2, "bipartite mode");
  c->add_option("--n0", a->n0, "bipartite side size");
  c->add_option("--start-n", a->start_n, "simple mode start size");
  c->add_option("--fold", a->fold, "lift mode N");
  c->add_option("--min-girth", a->min_girth, "0 for none");
  return [a](Context& ctx) {
    GadgetOptions o;
    o.seed = ctx.g.seed;
    o.start_n = a->start_n;
    o.lift_fold = a->fold;
    if (a->min_girth) o.min_girth = a->min_girth;
    GadgetResult res;
    const double thr = ramanujan_bound(a->d);
    if (a->mode == "bipartite") {
      res = bipartite_gadget(a->d, a->eps1, a->eps2, a->n0, o);
    } else {
      if (!a->target) fail(Errc::invalid_argument, "gadget: --target is required");
      res = a->mode == "simple" ? gadget_search_simple(a->d, *a->target, a->eps, o)
                                : gadget_search_lift(a->d, *a->target, a->eps, o);
    }
    ctx.emit("graph.txt", serialize_graph(res.graph));
    ctx.emit("trace.csv", trace_csv(res.trace));
    auto& r = ctx.rep.results;
    r["mode"] = res.mode;
    r["vertices"] = res.graph.vertex_count();
    r["depth"] = res.depth;
    r["achieved"] = res.achieved;
    r["achieved_above"] = res.achieved_above;
    r["achieved_double"] = res.achieved_double ? json(*res.achieved_double) : json(nullptr);
    r["girth"] = forge::length_json(res.girth);
    r["start_girth"] = forge::length_json(res.start_girth);
    r["slots"] = res.slots;
    r["trivial"] = res.trivial;
    r["best_step"] = res.best_step;
    r["start_attempts"] = res.start_attempts;
    if (a->mode == "simple") {
      r["target_in_range"] = res.target_in_range;
      const double gap = std::abs(res.achieved - res.target);
      ctx.rep.certify("window", gap, 2 * res.eps, gap <= 2 * res.eps,
                      "|lambda1(T^J H) - target| <= 2 eps");
      ctx.rep.certify("leaf-divisibility", static_cast<double>(res.slots % (2 * a->d)), 0.0,
                      res.slots % (2 * a->d) == 0, "T^1 leaves mod 2d");
    } else if (a->mode == "lift") {
      const auto cert = certify_lift_gadget(res, o);
      ctx.rep.certify("window", std::abs(res.achieved - res.target), res.eps, cert.window_pass);
      ctx.rep.certify("small-step", cert.max_step, cert.smallstep_bound, cert.smallstep_pass);
      ctx.rep.certify("second", cert.second_value, cert.second_bound, cert.second_pass);
      ctx.rep.certify("direct", cert.direct_gap, 1e-8, cert.direct_pass,
                      "built T^" + std::to_string(cert.direct_depth) + " against transfer");
      double fiber = cert.fiber_lambda2.empty() ? 0.0 : -INFINITY;
      for (std::size_t i = 0; i < cert.fiber_lambda2.size(); ++i)
        fiber = std::max(fiber, cert.fiber_lambda2[i] - cert.fiber_bound[i]);
      ctx.rep.certify("fiber", fiber, 0.0, cert.fiber_pass, "max lambda2 minus its bound");
      ctx.rep.certify("saturation",
                      res.achieved_double ? std::abs(*res.achieved_double - res.target) : INFINITY,
                      res.eps, cert.saturation_pass);
      r["fiber_lambda2"] = doubles(cert.fiber_lambda2);
    } else {
      r["window"] = {res.window_lo, res.window_hi};
      const bool in = res.achieved > res.window_lo && res.achieved < res.window_hi;
      ctx.rep.certify("window", res.achieved, res.window_hi, in,
                      "lambda1(T^I H) inside (" + format_double(res.window_lo) + ", " +
                          format_double(res.window_hi) + ")");
      ctx.rep.certify("leaf-divisibility", static_cast<double>(res.slots % a->d), 0.0,
                      res.slots % a->d == 0, "T^1 leaves mod d");
      const double want = std::ceil(0.5 * std::log(static_cast<double>(res.graph.vertex_count())) /
                                    std::log(static_cast<double>(a->d)));
      r["girth_goal"] = want;
      r["girth_goal_met"] = res.girth != kInfinite ? res.girth >= want : true;
    }
    r["threshold"] = thr;
  };
}

// ---- localized ----

struct LocalizedArgs {
  std::size_t d = 3;
  double beta = 0.3;
  double exponent = 4.0;
  LocalizedOptions o;
};

Handler add_localized(CLI::App& app) {
  auto a = std::make_shared<LocalizedArgs>();
  auto* c = app.add_subcommand("localized", "patched graph with a localized eigenvector");
  c->add_option("--d", a->d);
  c->add_option("--beta", a->beta);
  c->add_option("--exponent", a->exponent, "host size is |F1|^sqrt(exponent), capped");
  c->add_option("--n0", a->o.n0);
  c->add_option("--levels", a->o.levels);
  c->add_option("--host-cap", a->o.host_cap);
  c->add_option("--radius", a->o.radius);
  c->add_option("--host-margin", a->o.host_margin);
  c->add_option("--host-girth", a->o.host_girth);
  c->add_flag("--vector", "write eigenvector.csv");
  return [a, c](Context& ctx) {
    auto o = a->o;
    o.seed = ctx.g.seed;
    const auto res = localized_graph(a->d, a->beta, a->exponent, o);
    ctx.emit("graph.txt", serialize_graph(res.graph));
    if (c->count("--vector")) {
      std::string csv;
      for (double x : res.vector) csv += format_double(x) + "\n";
      ctx.emit("eigenvector.csv", csv);
    }
    const double thr = ramanujan_bound(a->d);
    auto& r = ctx.rep.results;
    r["vertices"] = res.graph.vertex_count();
    r["lambda"] = res.lambda;
    r["residual"] = res.residual;
    r["mass"] = res.mass;
    r["support"] = res.support.size();
    r["girth"] = forge::length_json(res.girth_achieved);
    r["gadget_vertices"] = res.gadget.graph.vertex_count();
    r["gadget_achieved"] = res.gadget.achieved;
    r["f1_size"] = res.f1_size;
    r["mu1"] = res.mu1;
    r["f1_lambda2"] = res.f1_lambda2;
    r["host_n"] = res.host_n;
    r["host_lambda2"] = res.host_lambda2;
    r["host_girth"] = forge::length_json(res.host_girth);
    r["radius"] = res.radius;
    r["patch_count"] = res.patch_count;
    r["lambda_window"] = {res.window_lo, res.window_hi};
    r["in_window"] = res.in_window;
    r["mu_window"] = {res.mu_window_lo, res.mu_window_hi};
    r["mu_in_window"] = res.mu_in_window;
    r["predicted_mass"] = res.predicted_mass;
    const auto& s = res.split;
    r["rayleigh"] = {{"cross", s.cross}, {"small", s.small}, {"big", s.big}, {"total", s.total}};
    ctx.rep.certify("lambda", res.lambda, thr, res.lambda > thr + kGuard);
    ctx.rep.certify("mass", res.mass, 1.0 - a->beta, res.mass >= 1.0 - a->beta);
    const double sum_gap = std::abs(s.cross + s.small + s.big - res.lambda);
    ctx.rep.certify("rayleigh-sum", sum_gap, 1e-6, sum_gap <= 1e-6);
    ctx.rep.certify("cross-term", s.cross, s.cross_bound, s.cross_pass);
    ctx.rep.certify("small-term", s.small, s.small_bound, s.small_pass);
    ctx.rep.certify("big-term", s.big, s.big_bound, s.big_pass);
  };
}

// ---- verify ----

struct VerifyArgs {
  std::string suite = "all";
  std::size_t seeds = 10;
  std::size_t swap_n = 200;
  std::size_t host_n = 1000;
};

Handler add_verify(CLI::App& app) {
  auto a = std::make_shared<VerifyArgs>();
  auto* c = app.add_subcommand("verify", "property suites");
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  c->add_option("--suite", a->suite)->check(CLI::IsMember(allowed));
  c->add_option("--seeds", a->seeds);
  c->add_option("--swap-n", a->swap_n);
  c->add_option("--host-n", a->host_n);
  return [a](Context& ctx) {
    SuiteOptions o;
    o.seed = ctx.g.seed;
    o.seeds = a->seeds;
    o.jobs = ctx.g.jobs;
    o.swap_n = a->swap_n;
    o.host_n = a->host_n;
    std::vector<std::string> run = a->suite == "all" ? suite_names() : std::vector{a->suite};
    json counts = json::object();
    for (const auto& name : run) {
      auto certs = run_suite(name, o);
      std::size_t ok = 0;
      for (auto& c : certs) {
        ok += c.pass;
        ctx.rep.certificates.push_back(std::move(c));
      }
      counts[name] = {{"passed", ok}, {"total", certs.size()}};
    }
    ctx.rep.results["suites"] = std::move(counts);
  };
}

// ---- config plumbing ----

bool is_command(const std::string& s, const CLI::App& app) {
  for (const auto* sub : app.get_subcommands({}))
    if (sub->get_name() == s) return true;
  return false;
}

void push_value(std::vector<std::string>& out, const std::string& key, const json& v) {
  const std::string flag = "--" + key;
  if (v.is_boolean()) {
    out.push_back(flag + "=" + (v.get<bool>() ? "true" : "false"));
  } else if (v.is_array()) {
    out.push_back(flag);
    for (const auto& x : v) {
      if (x.is_structured()) fail(Errc::parse, "config: nested value under " + key);
      out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    }
  } else if (v.is_string()) {
    out.push_back(flag);
    out.push_back(v.get<std::string>());
  } else if (v.is_number()) {
    out.push_back(flag);
    out.push_back(v.dump());
  } else {
    fail(Errc::parse, "config: unsupported value under " + key);
  }
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Config keys become flags placed before the command line, so flags given
// on the command line win under the take-last policy.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const CLI::App& app) {
  const auto path = find_config(args);
  if (!path) return args;
  const json cfg = json::parse(read_file(*path));
  if (!cfg.is_object()) fail(Errc::parse, "config: top level must be an object");
  std::vector<std::string> rest;
  std::optional<std::string> command;
  for (const auto& a : args) {
    if (!command && is_command(a, app)) command = a;
    else rest.push_back(a);
  }
  if (!command && cfg.contains("command")) command = cfg["command"].get<std::string>();
  std::vector<std::string> out;
  if (command) out.push_back(*command);
  for (const auto& [key, v] : cfg.items()) {
    if (key == "command" || key == "config") continue;
    push_value(out, key, v);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

json parse_scalar(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-' || s[0] == '.')) {
    try {
      std::size_t used = 0;
      if (s.find_first_of(".eE") == std::string::npos && s[0] != '-') {
        const auto v = std::stoull(s, &used);
        if (used == s.size()) return v;
      } else {
        const auto v = std::stod(s, &used);
        if (used == s.size()) return v;
      }
    } catch (const std::exception&) {
    }
  }
  return s;
}

// Effective option values of the chosen command, defaults included.
json echo_config(const CLI::App& sub, const Globals& g) {
  json cfg;
  cfg["command"] = sub.get_name();
  cfg["seed"] = g.seed;
  cfg["jobs"] = g.jobs;
  for (const auto* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() == 0) {
      const std::string def = opt->get_default_str();
      if (opt->get_expected_max() == 0) cfg[name] = false;
      else cfg[name] = def.empty() ? json(nullptr) : parse_scalar(def);
      continue;
    }
    const auto res = opt->results();
    if (opt->get_expected_max() == 0) {
      cfg[name] = res.empty() || res.back() != "false";
    } else if (opt->get_multi_option_policy() == CLI::MultiOptionPolicy::TakeAll) {
      json arr = json::array();
      for (const auto& x : res) arr.push_back(parse_scalar(x));
      cfg[name] = std::move(arr);
    } else {
      cfg[name] = parse_scalar(res.back());
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral graph constructions and their certificates", "forge"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON document of options; flags override it");
  app.add_option("--seed", g.seed);
  app.add_option("--out", g.out, "output directory");
  app.add_option("--jobs", g.jobs, "parallel seeds in verify")->check(CLI::PositiveNumber);
  app.add_flag("--wall-time", g.wall_time, "record wall_time in report.json");

  std::map<std::string, Handler> handlers;
  handlers["gen"] = add_gen(app);
  handlers["girth"] = add_girth(app);
  handlers["spectrum"] = add_spectrum(app);
  handlers["interp-l2"] = add_swap(app, SwapMode::lambda2);
  handlers["interp-lmin"] = add_swap(app, SwapMode::lambda_min);
  handlers["delete-interp"] = add_delete(app);
  handlers["augment"] = add_augment(app);
  handlers["secular"] = add_secular(app);
  handlers["patch"] = add_patch(app);
  handlers["gadget"] = add_gadget(app);
  handlers["localized"] = add_localized(app);
  handlers["verify"] = add_verify(app);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_config(args, app);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Report rep;
  rep.command = name;
  rep.config = echo_config(*sub, g);
  Context ctx{g, rep};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    handlers.at(name)(ctx);
  } catch (const Error& e) {
    std::cerr << "error [" << name << "/" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [" << name << "]: " << e.what() << "\n";
    return 1;
  }
  if (g.wall_time)
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.artifacts.push_back("report.json");
  try {
    forge::emit(rep, g.out, "report.json", rep.to_json().dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error [" << name << "/io]: " << e.what() << "\n";
    return 1;
  }
  for (const auto& c : rep.certificates)
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " value=" << format_double(c.value)
              << " bound=" << format_double(c.bound) << "\n";
  std::cout << (rep.pass() ? "all certificates pass" : "certificate failure") << " -> "
            << (fs::path(g.out) / "report.json").string() << "\n";
  return rep.pass() ? 0 : 1;
}
