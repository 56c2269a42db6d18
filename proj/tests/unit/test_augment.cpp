#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "spectralforge/augment.hpp"
#include "spectralforge/generate.hpp"
#include "spectralforge/secular.hpp"
#include "spectralforge/spectral.hpp"
#include "spectralforge/structure.hpp"
#include "spectralforge/surgery.hpp"

using namespace sforge;
using testing::error_of;

TEST_CASE("single augmentation") {
  CHECK(augment_once(complete_graph(4), 3).graph == complete_graph(4));
  const auto e = augment_once(path_graph(2), 3);
  CHECK(e.graph.vertex_count() == 6);
  CHECK(e.leaf_count == 4);
  const auto v = augment_once(empty_graph(1), 3);
  CHECK(v.graph == star_graph(3));
  CHECK(v.leaf_count == 3);
  CHECK(error_of([] { augment_once(star_graph(4), 3); }) == Errc::degree_exceeds);
}

TEST_CASE("iterated augmentation") {
  CHECK(augment(petersen_graph(), 3, 0).graph == petersen_graph());
  const auto t = augment(empty_graph(1), 3, 2);
  CHECK(t.graph.vertex_count() == 10);
  CHECK(t.graph.max_degree() == 3);
  CHECK(girth(t.graph) == kInfinite);
  for (std::size_t l : {1u, 3u, 5u}) CHECK(augment(complete_graph(4), 3, l).graph == complete_graph(4));
}

TEST_CASE("(d,s,l)-augmentation") {
  AugmentationSpec none{3, 0, 4};
  CHECK(augment_s(petersen_graph(), none).graph == petersen_graph());
  AugmentationSpec two{3, 2, 1};
  const auto a = augment_s(empty_graph(1), two);
  CHECK(a.graph.vertex_count() == 3);
  CHECK(a.graph.edge_count() == 2);
  AugmentationSpec k4{4, 1, 1};
  const auto b = augment_s(complete_graph(4), k4);
  CHECK(b.graph.vertex_count() == 8);
  for (Vertex v = 0; v < 4; ++v) CHECK(b.graph.degree(v) == 4);
  // d'-regular core with s = d - d' is the plain iterated augmentation
  AugmentationSpec c{4, 2, 3};
  CHECK(augment_s(cycle_graph(5), c).graph == augment(cycle_graph(5), 4, 3).graph);
  AugmentationSpec over{3, 1, 2};
  CHECK(error_of([&] { augment_s(complete_graph(4), over); }) == Errc::degree_exceeds);
  over.allow_excess_degree = true;
  CHECK(augment_s(complete_graph(4), over).graph.vertex_count() == 4 + 4 * 3);
}

TEST_CASE("secular coefficients") {
  for (std::size_t d : {3u, 5u}) {
    CHECK(ai(2.5, d, 0).value == 1.0);
    CHECK(ai(2.5, d, 1).value == 2.5);
  }
  CHECK(ai_recurrence(3.0, 3, 2) == doctest::Approx(7.0));
  CHECK(ai_closed(3.0, 3, 2) == doctest::Approx(7.0));
  CHECK(ai(2.0, 3, 3).recurrence_path);
  for (std::size_t d = 3; d <= 8; ++d) {
    const double thr = ramanujan_bound(d);
    for (double lam = thr + 0.01; lam <= static_cast<double>(d); lam += 0.05)
      for (std::size_t i = 0; i <= 64; ++i) {
        const double r = ai_recurrence(lam, d, i);
        CHECK(std::abs(ai_closed(lam, d, i) - r) <= 1e-9 * std::abs(r));
      }
  }
}

TEST_CASE("secular solve") {
  CHECK(secular_solve(2.9, 3, 0, 4) == doctest::Approx(2.9));
  CHECK_FALSE(secular_solve(2.5, 3, 0, 4).has_value());
  CHECK_FALSE(secular_solve(0.0, 3, 3, 4).has_value());
  AugmentationSpec star{3, 3, 4};
  CHECK(lambda1(augment_s(empty_graph(1), star).graph) < ramanujan_bound(3));

  AugmentationSpec k4l2{4, 1, 2};
  const auto small = augment_s(complete_graph(4), k4l2);
  CHECK(small.graph.vertex_count() == 20);
  CHECK(lambda1(small.graph) < ramanujan_bound(4));
  CHECK_FALSE(secular_solve(3.0, 4, 1, 2).has_value());
  AugmentationSpec k4l5{4, 1, 5};
  const auto deep = secular_solve(3.0, 4, 1, 5);
  REQUIRE(deep.has_value());
  CHECK(std::abs(*deep - lambda1(augment_s(complete_graph(4), k4l5).graph)) <= 1e-8);

  AugmentationSpec spec{4, 1, 2};
  spec.allow_excess_degree = true;
  const auto aug = augment_s(complete_graph(5), spec);
  CHECK(aug.graph.vertex_count() == 25);
  const auto lam = secular_solve(4.0, 4, 1, 2);
  REQUIRE(lam.has_value());
  CHECK(std::abs(*lam - lambda1(aug.graph)) <= 1e-8);

  const std::vector<double> ones(5, 1.0 / std::sqrt(5.0));
  auto v = radial_extension(ones, *lam, aug);
  double n = 0;
  for (double x : v) n += x * x;
  for (double& x : v) x /= std::sqrt(n);
  CHECK(residual_norm(SymmetricOperator(aug.graph), v, *lam) <= 1e-8);
  const std::vector<double> zero(5, 0.0);
  for (double x : radial_extension(zero, *lam, aug)) CHECK(x == 0.0);
  AugmentationSpec flat{4, 0, 2};
  const auto same = augment_s(complete_graph(5), flat);
  CHECK(radial_extension(ones, 3.5, same) == ones);
}

TEST_CASE("ceiling verdict") {
  const auto a = lambda2_ceiling_after_augment(0.0, 5, 0, 0.0);
  CHECK(a.threshold == doctest::Approx(4.0));
  const auto b = lambda2_ceiling_after_augment(0.0, 3, 2, 0.0);
  CHECK(b.threshold == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.ceiling == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(error_of([] { lambda2_ceiling_after_augment(0.0, 3, 1, -0.1); }) == Errc::invalid_argument);
}

TEST_CASE("transfer eigenvalues match built augmentations") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    GenerationPolicy p;
    p.seed = s;
    const Graph h = random_regular(12, 3, p);
    const Graph cut = induced_subgraph(h, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8}).graph;
    const auto built = augment(cut, 3, 4);
    const auto full = full_spectrum(built.graph);
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto t = augmented_eigenvalue(cut, 3, 4, k);
      if (full[k - 1] > ramanujan_bound(3) + 1e-9) {
        REQUIRE(t.has_value());
        CHECK(std::abs(*t - full[k - 1]) <= 1e-8);
      } else {
        CHECK_FALSE(t.has_value());
      }
    }
  }
}
