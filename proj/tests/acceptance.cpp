// Acceptance run: one PASS/FAIL line per criterion, then a determinism rerun.
// Exit status is the number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spectralforge/augment.hpp"
#include "spectralforge/construct/deletion.hpp"
#include "spectralforge/construct/localized.hpp"
#include "spectralforge/construct/swap_interpolation.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/io.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/verify.hpp"

using namespace sforge;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string summary;  // one line for the console
  std::string report;   // deterministic body compared by criterion 13
};

std::string f(double x) { return format_double(x); }

std::string lines(const std::vector<Certificate>& cs) {
  std::string s;
  for (const auto& c : cs)
    s += c.name + " " + f(c.value) + " " + f(c.bound) + (c.pass ? " pass " : " fail ") + c.detail + "\n";
  return s;
}

Outcome from_suite(const std::string& name, std::size_t seeds, SuiteOptions opt = {}) {
  opt.seed = kSeed;
  opt.seeds = seeds;
  const auto cs = run_suite(name, opt);
  Outcome o;
  o.pass = true;
  std::size_t live = 0;
  double worst = 0.0;
  for (const auto& c : cs) {
    o.pass = o.pass && c.pass;
    if (c.detail.rfind("not-applicable", 0) == 0) continue;
    ++live;
    worst = std::max(worst, c.bound > 0 ? c.value / c.bound : c.value);
  }
  o.summary = std::to_string(cs.size()) + " instances, " + std::to_string(live) +
              " non-vacuous, worst value/bound " + f(worst);
  o.report = lines(cs);
  return o;
}

Graph random_small(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 2 + rng.below(11);
  const double p = 0.15 + 0.7 * rng.uniform();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Outcome c1() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Graph g = random_small(derive_seed(kSeed, i));
    const auto dense = full_spectrum(g);
    const auto lz = lanczos_spectrum(SymmetricOperator(g), g.vertex_count(), 0, SolverConfig{}, false);
    if (lz.eigenvalues.size() != dense.size()) {
      worst = INFINITY;
      continue;
    }
    for (std::size_t k = 0; k < dense.size(); ++k)
      worst = std::max(worst, std::abs(lz.eigenvalues[k] - dense[k]));
    o.report += f(lz.eigenvalues.front()) + "\n";
  }
  o.pass = worst <= 1e-8;
  o.summary = "max |lanczos - dense| " + f(worst) + " <= 1e-8";
  return o;
}

Outcome c2() {
  struct Named {
    const char* name;
    Graph g;
    std::vector<double> want;
  };
  const std::vector<Named> cases{{"K4", complete_graph(4), {3, -1, -1, -1}},
                                 {"C4", cycle_graph(4), {2, 0, 0, -2}},
                                 {"Petersen", petersen_graph(), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2}}};
  Outcome o;
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto ev = full_spectrum(c.g);
    for (std::size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev[i] - c.want[i]));
    o.report += std::string(c.name) + " " + std::to_string(ev.size()) + "\n";
  }
  o.pass = worst <= 1e-9;
  o.summary = "max error " + f(worst) + " <= 1e-9";
  return o;
}

Outcome swap_run(SwapMode mode) {
  const std::size_t n = 1000, d = 3;
  const bool up = mode == SwapMode::lambda2;
  SwapOptions so;
  so.seed = kSeed;
  so.girth_floor = 6;
  so.run_to_exhaustion = true;
  const double target = up ? 2.95 : -2.95;
  const auto run = up ? interpolate_lambda2(n, d, target, so) : interpolate_lambda_min(n, d, target, so);
  const auto drift = verify_swap_drift(run, d);
  const double worst_step = max_step_drift(run.trace);
  const double miss = std::abs(run.trace.achieved - target);
  const double cert = up ? 3.0 - 4.0 / std::sqrt(double(n)) : -3.0 + 8.0 / std::sqrt(double(n));
  const bool cert_ok = run.exhaustion_step.has_value() &&
                       (up ? run.exhaustion_rayleigh >= cert : run.exhaustion_rayleigh <= cert);
  bool odd_ok = true;
  if (!up)
    for (const auto& r : run.records) odd_ok = odd_ok && r.odd_girth > 0;
  Outcome o;
  o.pass = run.crossed_step.has_value() && drift.violations == 0 && miss <= worst_step && cert_ok && odd_ok;
  std::ostringstream s;
  s << run.records.size() << " steps, drift checked " << drift.checked << " violations "
    << drift.violations << " max drift/bound " << f(drift.max_ratio) << "; |achieved - target| "
    << f(miss) << " <= " << f(worst_step) << "; exhaustion Rayleigh " << f(run.exhaustion_rayleigh)
    << (up ? " >= " : " <= ") << f(cert);
  if (!up) s << "; odd girth on every step " << (odd_ok ? "yes" : "no");
  o.summary = s.str();
  o.report = o.summary + "\n" + trace_csv(run.trace);
  return o;
}

Outcome c6() {
  DeletionOptions o;
  o.seed = kSeed;
  const auto run = deletion_interpolate(256, 3, 2.9, o);
  const double thr = ramanujan_bound(3);
  bool mono = true, inter = true;
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    inter = inter && run.records[i].lambda2 <= thr + 1e-6;
    if (i) mono = mono && run.records[i].lambda1 <= run.records[i - 1].lambda1;
  }
  const double miss = std::abs(run.trace.achieved - 2.9);
  Outcome out;
  out.pass = run.crossed_step.has_value() && miss <= run.certified_gap && mono && inter;
  out.summary = std::to_string(run.records.size()) + " steps; |lambda1 - 2.9| " + f(miss) +
                " <= certified " + f(run.certified_gap) + "; lambda2 under 2 sqrt 2 " +
                (inter ? "yes" : "no") + "; lambda1 monotone " + (mono ? "yes" : "no");
  out.report = out.summary + "\n" + trace_csv(run.trace);
  return out;
}

Outcome c9() {
  SuiteOptions opt;
  opt.host_n = 3000;
  const auto c = run_instance("patch-pinning", kSeed, opt);
  Outcome o;
  o.pass = c.pass;
  o.summary = "|lambda2 - mu1| " + f(c.value) + " <= " + f(c.bound) + " with lower bound; " + c.detail;
  o.report = lines({c});
  return o;
}

Outcome c10() {
  // With d = 3 every augmentation has lambda1 <= 3 < 2 sqrt 2 + 0.25, so the
  // hypothesis never holds there; the first degree where it can is d = 4.
  Outcome o = from_suite("saturation", 5);
  o.summary = "d=3 vacuous (lambda1 <= 3 < 3.078); d=4, J=28: " + o.summary;
  return o;
}

Outcome c11() {
  LocalizedOptions lo;
  lo.seed = kSeed;
  lo.n0 = 200;
  lo.host_cap = 10000;
  const auto r = localized_graph(3, 0.3, 4.0, lo);
  const double sum = r.split.cross + r.split.small + r.split.big;
  const double gap = std::abs(sum - r.lambda);
  Outcome o;
  o.pass = r.lambda > ramanujan_bound(3) && r.mass >= 0.7 && gap <= 1e-6 &&
           r.graph.vertex_count() <= 10000 + r.f1_size;
  o.summary = "n " + std::to_string(r.graph.vertex_count()) + " host " + std::to_string(r.host_n) +
              "; lambda " + f(r.lambda) + " > 2 sqrt 2; mass " + f(r.mass) +
              " >= 0.7; |split sum - lambda| " + f(gap) + " <= 1e-6";
  o.report = o.summary + "\n" + serialize_graph(r.graph);
  return o;
}

struct Criterion {
  int id;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, 10, c1},
      {2, 10, c2},
      {3, 30, [] { return from_suite("walk-count", 50); }},
      {4, 600, [] { return swap_run(SwapMode::lambda2); }},
      {5, 600, [] { return swap_run(SwapMode::lambda_min); }},
      {6, 300, c6},
      {7, 120, [] { return from_suite("secular-transfer", 30); }},
      {8, 120, [] { return from_suite("lambda2-ceiling", 20); }},
      {9, 300, c9},
      {10, 120, c10},
      {11, 900, c11},
      {12, 60, [] { return from_suite("layers", 30); }},
  };
  using clock = std::chrono::steady_clock;
  std::vector<std::string> reports;
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool ok = o.pass && secs < c.limit_s;
    failed += !ok;
    std::printf("criterion %2d: %s  [%.1f s / %.0f s]  %s\n", c.id, ok ? "PASS" : "FAIL", secs,
                c.limit_s, o.summary.c_str());
    std::fflush(stdout);
    reports.push_back(o.report);
  }

  const auto t0 = clock::now();
  std::size_t same = 0;
  std::string diff;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::string again;
    try {
      again = all[i].run().report;
    } catch (const std::exception& e) {
      again = e.what();
    }
    if (again == reports[i] && !again.empty())
      ++same;
    else
      diff += " " + std::to_string(all[i].id);
  }
  const double secs = std::chrono::duration<double>(clock::now() - t0).count();
  const bool ok = same == all.size();
  failed += !ok;
  std::printf("criterion 13: %s  [%.1f s]  %zu/%zu reports byte-identical on rerun%s\n",
              ok ? "PASS" : "FAIL", secs, same, all.size(), ok ? "" : (" (differ:" + diff + ")").c_str());
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
