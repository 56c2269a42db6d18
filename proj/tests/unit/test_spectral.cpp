#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "spectralforge/augment.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/layers.hpp"
#include "spectralforge/rng.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/walks.hpp"

using namespace sforge;

namespace {

void check_spectrum(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

Graph random_small(std::uint64_t seed, std::size_t lo, std::size_t hi) {
  Rng rng(seed);
  const std::size_t n = lo + rng.below(hi - lo + 1);
  const double p = 0.2 + 0.5 * rng.uniform();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("named spectra") {
  check_spectrum(full_spectrum(complete_graph(4)), {3, -1, -1, -1});
  check_spectrum(full_spectrum(cycle_graph(4)), {2, 0, 0, -2});
  check_spectrum(full_spectrum(petersen_graph()), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2});
}

TEST_CASE("lanczos agrees with dense on small graphs") {
  SolverConfig cfg;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Graph g = random_small(s, 2, 12);
    const SymmetricOperator op(g);
    const auto dense = full_spectrum(g);
    const auto lz = lanczos_spectrum(op, g.vertex_count(), 0, cfg, false);
    REQUIRE(lz.eigenvalues.size() == dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i)
      CHECK(std::abs(lz.eigenvalues[i] - dense[i]) <= 1e-8);
  }
}

TEST_CASE("extreme pairs and residuals") {
  GenerationPolicy p;
  p.seed = 2;
  const Graph g = random_regular(300, 3, p);
  SolverConfig lanczos;
  lanczos.dense_cutoff = 10;
  const auto a = spectrum(g, 3, 2, lanczos, true);
  const auto b = spectrum(g, 3, 2, SolverConfig{}, true);
  CHECK(a.method == SolverMethod::lanczos);
  CHECK(b.method == SolverMethod::dense);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-8);
    CHECK(residual_norm(SymmetricOperator(g), a.eigenvectors[i], a.eigenvalues[i]) <= 1e-7);
  }
  CHECK(a.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rayleigh quotient and localization mass") {
  const Graph k4 = complete_graph(4);
  CHECK(rayleigh(k4, std::vector<double>(4, 1.0)) == doctest::Approx(3.0));
  CHECK(rayleigh(cycle_graph(4), std::vector<double>{1, -1, 1, -1}) == doctest::Approx(-2.0));
  const auto sp = spectrum(petersen_graph(), 2, 0, SolverConfig{}, true);
  CHECK(rayleigh(petersen_graph(), sp.eigenvectors[1]) == doctest::Approx(1.0));
  const std::vector<double> v{0.5, 0.5, 0.5, 0.5};
  const std::vector<Vertex> all{0, 1, 2, 3}, none{};
  CHECK(localization_mass(v, all) == doctest::Approx(1.0));
  CHECK(localization_mass(v, none) == 0.0);
  const std::vector<double> w{0.0, 0.6, 0.8, 0.0};
  const std::vector<Vertex> mid{1, 2};
  CHECK(localization_mass(w, mid) == doctest::Approx(1.0));
}

TEST_CASE("closed walk counts") {
  CHECK(closed_walk_count(complete_graph(4), 2) == 12);
  CHECK(closed_walk_count(cycle_graph(4), 2) == 8);
  CHECK(closed_walk_count(petersen_graph(), 4) == 150);
  const auto k = per_vertex_walk_counts(complete_graph(4), 2);
  for (const auto& x : k) CHECK(x == 3);
  const auto s = per_vertex_walk_counts(star_graph(3), 2);
  CHECK(s[0] == 3);
  CHECK(s[1] == 1);
  for (const auto& x : per_vertex_walk_counts(cycle_graph(6), 4)) CHECK(x == 6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_small(seed, 5, 14);
    for (std::size_t len : {2u, 4u, 6u, 8u})
      CHECK(closed_walk_count(g, len).get_ui() == testing::brute_trace_power(g, len));
  }
  const BigInt big("1000000000000000000000000000000");
  CHECK(big_root(big, 3) == doctest::Approx(1e10).epsilon(1e-12));
}

TEST_CASE("level decomposition") {
  const std::vector<Vertex> zero{0};
  const auto p = level_decomposition(path_graph(4), zero, 3, {});
  REQUIRE(p.levels.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(p.levels[i] == std::vector<Vertex>{static_cast<Vertex>(i)});
  const std::vector<Vertex> every{0, 1, 2, 3};
  CHECK(level_decomposition(path_graph(4), every, 3, {}).levels.size() == 1);
  const auto c = level_decomposition(cycle_graph(6), zero, 3, {});
  std::vector<std::size_t> sizes;
  for (const auto& l : c.levels) sizes.push_back(l.size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("layer inequalities") {
  LevelDecomposition flat;
  flat.levels.resize(5);
  flat.masses = {1, 1, 1, 1, 1};
  const auto r0 = check_layer_inequalities(flat, 3);
  CHECK(r0.pass);
  CHECK(r0.min_slack == doctest::Approx(0.0));
  LevelDecomposition conv;
  conv.levels.resize(4);
  conv.masses = {1, 2, 4, 8};
  CHECK(check_layer_inequalities(conv, 3).pass);
  LevelDecomposition bump;
  bump.levels.resize(4);
  bump.masses = {1, 5, 1, 1};
  CHECK_FALSE(check_layer_inequalities(bump, 3).pass);

  const auto aug = augment(complete_graph(4), 3, 3);
  // K4 is already 3-regular; use K3 so trees actually hang off the core
  const auto tri = augment(complete_graph(3), 3, 3);
  CHECK(aug.graph == complete_graph(4));
  const auto sp = spectrum(tri.graph, 1, 0, SolverConfig{}, true);
  const auto dec = level_decomposition(tri.graph, tri.core, 3, sp.eigenvectors[0]);
  CHECK(check_layer_inequalities(dec, 3).pass);
}

TEST_CASE("linf bound") {
  const std::vector<double> e{1.0, 0.0, 0.0, 0.0};
  const auto r1 = linf_bound_check(cycle_graph(4), 2.0, e, 1);
  CHECK(r1.pass);
  CHECK(r1.bound == doctest::Approx(1.0));
  const std::vector<double> c(6, 1.0 / std::sqrt(6.0));
  const auto r = linf_bound_check(cycle_graph(6), 2.0, c, 3);
  CHECK(r.applicable);
  CHECK(r.pass);
  CHECK(r.max_entry == doctest::Approx(0.408248).epsilon(1e-5));
  CHECK(r.bound == doctest::Approx(0.57735).epsilon(1e-5));

  GenerationPolicy p;
  p.seed = 3;
  p.min_girth = 7;
  const Graph g = random_regular(200, 3, p);
  const auto sp = spectrum(g, 2, 0, SolverConfig{}, true);
  const std::size_t rr = (girth(g) + 1) / 2;
  const auto rep = linf_bound_check(g, sp.eigenvalues[1], sp.eigenvectors[1], rr);
  CHECK(rep.pass);
}
