#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support.hpp"
#include "spectralforge/construct/deletion.hpp"
#include "spectralforge/construct/gadget.hpp"
#include "spectralforge/construct/join.hpp"
#include "spectralforge/construct/localized.hpp"
#include "spectralforge/construct/patch.hpp"
#include "spectralforge/construct/swap_interpolation.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"

using namespace sforge;
using testing::error_of;

TEST_CASE("swap interpolation: target already met") {
  SwapOptions o;
  o.seed = 5;
  const auto first = interpolate_lambda2(200, 3, 2.95, o);
  const double start = first.trace.steps.front().eigenvalue;
  if (start >= ramanujan_bound(3)) {
    const auto again = interpolate_lambda2(200, 3, start, o);
    CHECK(again.records.size() == 1);
    CHECK(again.graph == again.start);
  }

  const auto low = interpolate_lambda_min(200, 3, -2.95, o);
  const double bottom = low.trace.steps.front().eigenvalue;
  if (bottom <= -ramanujan_bound(3)) {
    const auto same = interpolate_lambda_min(200, 3, bottom, o);
    CHECK(same.records.size() == 1);
  }
}

TEST_CASE("swap interpolation: crossing count moves by two") {
  SwapOptions o;
  o.seed = 6;
  const auto up = interpolate_lambda2(200, 3, 2.95, o);
  for (std::size_t i = 1; i < up.records.size(); ++i)
    CHECK(up.records[i].crossing + 2 == up.records[i - 1].crossing);
  for (const auto& r : up.records) CHECK(r.girth >= 6);
  CHECK(verify_swap_drift(up, 3).violations == 0);
  CHECK(std::abs(up.trace.achieved - 2.95) <= max_step_drift(up.trace));
  const auto down = interpolate_lambda_min(200, 3, -2.95, o);
  for (std::size_t i = 1; i < down.records.size(); ++i)
    CHECK(down.records[i].crossing == down.records[i - 1].crossing + 2);
  CHECK(verify_swap_drift(down, 3).violations == 0);
  const auto rerun = interpolate_lambda_min(200, 3, -2.95, o);
  CHECK(trace_csv(rerun.trace) == trace_csv(down.trace));
}

TEST_CASE("bisection rayleigh quotient") {
  CHECK(bisection_rayleigh(cycle_graph(4), {0, 1, 0, 1}) == doctest::Approx(-2.0));
  CHECK(bisection_rayleigh(complete_graph(4), {0, 0, 1, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("deletion interpolation") {
  DeletionOptions o;
  o.seed = 2;
  const auto none = deletion_interpolate(64, 3, 3.0, o);
  CHECK(none.trace.best_step == 0);
  CHECK(none.graph == none.start);

  const auto run = deletion_interpolate(128, 3, 2.9, o);
  REQUIRE(run.crossed_step.has_value());
  CHECK(std::abs(run.trace.achieved - 2.9) <= run.certified_gap);
  for (std::size_t i = 1; i < run.records.size(); ++i) {
    CHECK(run.records[i].lambda1 <= run.records[i - 1].lambda1 + 1e-9);
    CHECK(run.records[i].lambda2 <= ramanujan_bound(3) + 1e-6);
  }
  o.connected = true;
  const auto tree = deletion_interpolate(128, 3, 2.9, o);
  for (const auto& r : tree.records) CHECK(r.connected);
  CHECK(deletion_walk_length(100, 64) == 50);
  CHECK(deletion_walk_length(200, 64) == 64);
  CHECK(deletion_walk_length(3, 64) == 2);
}

TEST_CASE("chain join") {
  const std::vector<Graph> one{petersen_graph()};
  CHECK(chain_join(one, 3).graph == petersen_graph());
  const std::vector<Graph> two{path_graph(2), path_graph(2)};
  const auto p4 = chain_join(two, 3);
  CHECK(p4.graph == path_graph(4));
  const auto ev = full_spectrum(p4.graph);
  for (std::size_t k = 1; k <= 4; ++k)
    CHECK(ev[k - 1] == doctest::Approx(2 * std::cos(M_PI * k / 5.0)));

  std::vector<Graph> parts;
  for (std::uint64_t s = 0; s < 3; ++s) {
    GenerationPolicy p;
    p.seed = s;
    p.min_girth = 6;
    parts.push_back(delete_vertex(random_regular(60, 3, p), 0).graph);
  }
  const auto j = chain_join(parts, 3);
  CHECK(j.graph.max_degree() == 3);
  CHECK(is_connected(j.graph));
  CHECK(verify_join_drift(parts, j, 3, 3).pass);
}

TEST_CASE("patch vertex selection") {
  const auto one = select_patch_vertices(cycle_graph(20), 1, 3);
  CHECK(one.size() == 1);
  const auto two = select_patch_vertices(cycle_graph(20), 2, 2);
  REQUIRE(two.size() == 2);
  const std::vector<Vertex> src{two[0]};
  CHECK(bfs_distances(cycle_graph(20), src)[two[1]] >= 9);
  GenerationPolicy p;
  p.seed = 1;
  const Graph host = random_regular(50, 3, p);
  CHECK(error_of([&] { select_patch_vertices(host, 5, 10); }) == Errc::infeasible);
}

TEST_CASE("patching") {
  GenerationPolicy p;
  p.seed = 3;
  p.min_girth = 5;
  PatchPlan none;
  none.host = random_regular(100, 3, p);
  CHECK(patch(none).graph == none.host);

  PatchPlan plan;
  plan.host = random_regular(300, 3, p);
  plan.gadgets.push_back(delete_vertex(petersen_graph(), 0).graph);
  plan.radius = 2;
  plan.patch_vertices = select_patch_vertices(plan.host, 1, plan.radius);
  const auto res = patch(plan);
  CHECK(res.graph.is_regular(3));
  CHECK(res.graph.vertex_count() == 299 + 9);
  CHECK(res.cross_edges.size() == 3);
  CHECK(res.slot_count == 3);
  CHECK(slot_count(plan.gadgets[0], 3) == 3);

  PatchPlan bad = plan;
  bad.gadgets.push_back(path_graph(2));
  CHECK(error_of([&] { patch(bad); }) == Errc::leaf_count_mismatch);
}

TEST_CASE("simple gadget search") {
  GadgetOptions o;
  o.seed = 1;
  o.start_n = 100;
  const auto g = gadget_search_simple(3, 2.9, 0.2, o);
  CHECK(std::abs(g.achieved - 2.9) <= 0.4);
  CHECK_FALSE(g.target_in_range);
  CHECK(g.slots % 6 == 0);
  for (std::size_t i = 1; i < g.steps.size(); ++i)
    CHECK(g.steps[i].lambda1 <= g.steps[i - 1].lambda1 + 6.0 * 3 / 100);
  o.start_n = 400;
  const auto near = gadget_search_simple(3, 2.95, 0.05, o);
  CHECK(near.target_in_range);
  CHECK(std::abs(near.achieved - 2.95) <= 0.1);
}

TEST_CASE("bipartite gadget") {
  GadgetOptions o;
  o.seed = 1;
  CHECK(error_of([&] { bipartite_gadget(3, 0.2, 0.2, 200, o); }) == Errc::infeasible);
  GenerationPolicy p;
  p.seed = 1;
  const Graph b = generate_bipartite_regular(60, 3, p).graph;
  const auto ev = full_spectrum(b);
  CHECK(ev.back() == doctest::Approx(-3.0));
  for (std::size_t i = 0; i < ev.size(); ++i)
    CHECK(ev[i] == doctest::Approx(-ev[ev.size() - 1 - i]).epsilon(1e-9));
  const auto g = bipartite_gadget(3, 0.1, 0.1, 60, o);
  CHECK(g.achieved > g.window_lo);
  CHECK(g.achieved < g.window_hi);
  CHECK(g.slots % 3 == 0);
}

TEST_CASE("rayleigh split covers every edge once") {
  const Graph g = cycle_graph(8);
  const std::vector<double> v{0.1, 0.2, 0.3, 0.4, 0.5, 0.4, 0.3, 0.2};
  const auto s = rayleigh_split(g, v, 4, 4);
  CHECK(s.cross + s.small + s.big == doctest::Approx(rayleigh(g, v)));
  CHECK(s.f1_mass + s.host_mass == doctest::Approx(1.0));
}
