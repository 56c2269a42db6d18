#include <doctest.h>

#include <set>

#include "../support.hpp"
#include "spectralforge/construct/trace.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/io.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"

using namespace sforge;
using testing::error_of;

TEST_CASE("from_edges rejects loops, duplicates and out of range labels") {
  std::vector<Edge> loop{{1, 1}};
  std::vector<Edge> dup{{0, 1}, {1, 0}};
  std::vector<Edge> far{{0, 4}};
  CHECK(error_of([&] { Graph::from_edges(3, loop); }).has_value());
  CHECK(error_of([&] { Graph::from_edges(3, dup); }).has_value());
  CHECK(error_of([&] { Graph::from_edges(3, far); }).has_value());
  auto g = Graph::from_edges(3, std::vector<Edge>{{2, 0}, {1, 0}});
  CHECK(g.edge_count() == 2);
  CHECK(g.neighbors(0).size() == 2);
  CHECK(g.neighbors(0)[0] == 1);
  CHECK_FALSE(validate(g).has_value());
}

TEST_CASE("random regular: unique graph, girth floor, parity") {
  GenerationPolicy p;
  for (std::uint64_t s = 0; s < 5; ++s) {
    p.seed = s;
    CHECK(random_regular(4, 3, p) == complete_graph(4));
  }
  p.seed = 11;
  p.min_girth = 6;
  const Graph g = random_regular(1000, 3, p);
  CHECK(g.is_regular(3));
  CHECK(girth(g) >= 6);
  CHECK_FALSE(validate(g).has_value());
  CHECK(error_of([] { random_regular(5, 3, {}); }) == Errc::parity);
}

TEST_CASE("random regular is reproducible per seed") {
  GenerationPolicy p;
  p.seed = 99;
  p.min_girth = 5;
  CHECK(random_regular(200, 3, p) == random_regular(200, 3, p));
  GenerationPolicy q = p;
  q.seed = 100;
  CHECK_FALSE(random_regular(200, 3, p) == random_regular(200, 3, q));
}

TEST_CASE("bipartite regular start") {
  GenerationPolicy p;
  p.seed = 4;
  const Graph g = generate_bipartite_regular(40, 3, p).graph;
  CHECK(g.is_regular(3));
  CHECK(is_bipartite(g));
  for (const auto& e : g.edges()) CHECK((e.u < 20) != (e.v < 20));
}

TEST_CASE("lifts") {
  const Graph k4 = complete_graph(4);
  CHECK(random_lift(k4, 1, 3) == k4);
  const Graph l2 = random_lift(k4, 2, 7);
  CHECK(l2.vertex_count() == 8);
  CHECK(l2.is_regular(3));
  CHECK(project_lift(l2, 2) == k4);
  const Graph c = random_lift(cycle_graph(4), 3, 5);
  CHECK(c.vertex_count() == 12);
  CHECK(c.is_regular(2));
  const auto comp = connected_components(c);
  std::vector<std::size_t> sizes(comp.count, 0);
  for (auto l : comp.label) ++sizes[l];
  std::size_t total = 0;
  for (auto s : sizes) {
    CHECK(s % 4 == 0);
    total += s;
  }
  CHECK(total == 12);
}

TEST_CASE("girth against the exhaustive cycle oracle") {
  CHECK(girth(complete_graph(4)) == 3);
  CHECK(girth(path_graph(3)) == kInfinite);
  CHECK(girth(petersen_graph()) == 5);
  CHECK(odd_girth(cycle_graph(5)) == 5);
  CHECK(odd_girth(cycle_graph(6)) == kInfinite);
  CHECK(odd_girth(petersen_graph()) == 5);
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    const std::size_t n = 6 + rng.below(9);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.uniform() < 0.3) edges.push_back({u, v});
    const Graph g = Graph::from_edges(n, edges);
    CHECK(girth(g) == testing::brute_girth(g));
    CHECK(odd_girth(g) == testing::brute_girth(g, true));
  }
}

TEST_CASE("swap surgery") {
  const Graph c6 = cycle_graph(6);
  const Graph two = swap(c6, SwapMove{0, 1, 4, 3});
  CHECK(connected_components(two).count == 2);
  CHECK(girth(two) == 3);
  CHECK(two.is_regular(2));
  // pairing 0-3 and 1-4 closes a single hexagon instead
  const Graph one = swap(c6, SwapMove{0, 1, 3, 4});
  CHECK(connected_components(one).count == 1);
  CHECK(one.is_regular(2));
  CHECK(error_of([&] { swap(c6, SwapMove{0, 1, 1, 2}); }) == Errc::edges_not_disjoint);
  CHECK(error_of([&] { swap(c6, SwapMove{0, 2, 3, 4}); }) == Errc::missing_edge);
  GenerationPolicy p;
  p.seed = 1;
  const Graph g = random_regular(30, 3, p);
  const auto e = g.edges();
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i].u == e[0].u || e[i].u == e[0].v || e[i].v == e[0].u || e[i].v == e[0].v) continue;
    if (g.has_edge(e[0].u, e[i].u) || g.has_edge(e[0].v, e[i].v)) continue;
    CHECK(swap(g, e[0], e[i]).degrees() == g.degrees());
    break;
  }
}

TEST_CASE("edge distance") {
  const Graph c6 = cycle_graph(6);
  CHECK(edge_distance(c6, {0, 1}, {1, 2}) == 0);
  CHECK(edge_distance(c6, {0, 1}, {3, 4}) == 2);
  const Graph two = matching_graph(2);
  CHECK(edge_distance(two, {0, 1}, {2, 3}) == kInfinite);
}

TEST_CASE("bisection crossing counts") {
  const Graph k4 = complete_graph(4);
  CHECK(count_crossing(k4, {0, 0, 1, 1}) == 4);
  CHECK(count_crossing(k4, {0, 1, 0, 1}) == 4);
  CHECK(count_crossing(cycle_graph(4), {0, 1, 0, 1}) == 4);
  CHECK(count_crossing(empty_graph(4), {0, 0, 1, 1}) == 0);
  const auto b = bisect(petersen_graph(), 3);
  CHECK(b.part_b.size() == 5);
  CHECK(b.part_c.size() == 5);
  CHECK(b.crossing_count == count_crossing(petersen_graph(), b.side));
}

TEST_CASE("vertex deletion") {
  CHECK(delete_vertex(complete_graph(4), 2).graph == complete_graph(3));
  const auto s = delete_vertex(star_graph(3), 0);
  CHECK(s.graph.vertex_count() == 3);
  CHECK(s.graph.edge_count() == 0);
  const auto p = delete_vertex(petersen_graph(), 0);
  CHECK(p.graph.vertex_count() == 9);
  CHECK(p.graph.edge_count() == 12);
  CHECK(p.original.front() == 1);
}

TEST_CASE("edge list format") {
  const std::string k4 = "spectralforge-graph v1 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
  CHECK(parse_graph(k4) == complete_graph(4));
  CHECK(serialize_graph(parse_graph(k4)) == k4);
  CHECK(error_of([] { parse_graph("spectralforge-graph v1 3 2\n0 1\n0 1\n"); }) ==
        Errc::duplicate_edge);
  CHECK(error_of([] { parse_graph("graph 3 1\n0 1\n"); }) == Errc::parse);
  CHECK(error_of([] { parse_graph("spectralforge-graph v1 3 1\n1 0\n"); }) == Errc::parse);
  CHECK(error_of([] { parse_graph("spectralforge-graph v1 3 1\n0 3\n"); }) == Errc::out_of_range);
  GenerationPolicy p;
  p.seed = 8;
  const Graph g = random_regular(64, 5, p);
  CHECK(parse_graph(serialize_graph(g)) == g);
}

TEST_CASE("trace csv") {
  InterpolationTrace t;
  CHECK(trace_csv(t) == "step,surgery,eigenvalue,girth,counter\n");
  for (std::size_t i = 0; i < 3; ++i) t.steps.push_back({i, "x", 0.5 * i, kInfinite, i});
  const auto csv = trace_csv(t);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv == trace_csv(t));
}

TEST_CASE("seed streams") {
  CHECK(derive_seed(1, "host") == derive_seed(1, "host"));
  CHECK(derive_seed(1, "host") != derive_seed(1, "gadget"));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.below(17) == b.below(17));
}
