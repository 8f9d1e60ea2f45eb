#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hullmap/error.hpp"
#include "hullmap/fixtures.hpp"
#include "hullmap/set_metrics.hpp"
#include "support.hpp"

using namespace hullmap;

namespace {

FiniteSet random_set(std::mt19937_64& rng, int dim, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> rows(static_cast<std::size_t>(dim) * n);
  for (auto& x : rows) x = u(rng);
  return FiniteSet(dim, rows);
}

double brute_directed(const FiniteSet& a, const FiniteSet& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = 1e300;
    for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, (a.point(i) - b.point(j)).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("Hausdorff distances of small sets") {
  const FiniteSet a(2, {0, 0, 1, 0});
  const FiniteSet b(2, {0, 0});
  CHECK(directed_hausdorff(a, b) == 1.0);
  CHECK(directed_hausdorff(b, a) == 0.0);
  CHECK(symmetric_hausdorff(a, b) == 1.0);
  CHECK(symmetric_hausdorff(a, a) == 0.0);
  const FiniteSet c(2, {3, 4});
  CHECK(symmetric_hausdorff(b, c) == doctest::Approx(5.0));
}

TEST_CASE("Hausdorff distances match brute force on both kernels") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 5;
    const auto a = random_set(rng, d, 1 + t * 7);
    const auto b = random_set(rng, d, 3 + t * 5);
    const double expect = brute_directed(a, b);
    CHECK(directed_hausdorff(a, b, kernels::Isa::Scalar) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(directed_hausdorff(a, b, kernels::best_isa()) == directed_hausdorff(a, b, kernels::Isa::Scalar));
  }
}

TEST_CASE("Hausdorff errors") {
  CHECK_THROWS_AS(directed_hausdorff(FiniteSet(2, {}), FiniteSet(2, {0, 0})), Error);
  CHECK_THROWS_AS(directed_hausdorff(FiniteSet(2, {0, 0}), FiniteSet(3, {0, 0, 0})), Error);
  CHECK_THROWS_AS(FiniteSet(2, {0, 0, 1}), Error);
}

TEST_CASE("distance to the hull boundary as a target set") {
  const auto hull = build_hull(fixtures::triangle());
  const FiniteSet on(2, {0.5, 0, 0, 0.5, 0.5, 0.5});
  CHECK(directed_hausdorff(on, hull) <= 1e-15);
  const FiniteSet inside(2, {0.1, 0.1, 0.2, 0.2});
  CHECK(directed_hausdorff(inside, hull) == doctest::Approx(0.2));
}

TEST_CASE("log-log slopes") {
  const std::vector<double> x = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * v * v);
  const auto fit = fit_loglog(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.residual == doctest::Approx(0.0).scale(1));

  // Only the tail is fitted.
  std::vector<double> kinked = {5.0, 1e-2, 1e-3, 1e-4};
  CHECK(fit_loglog(x, kinked).slope == doctest::Approx(1.0));
  CHECK(fit_loglog(x, kinked, 4).slope > 1.2);
  CHECK(fit_loglog(x, kinked, 4).residual > 0.1);

  CHECK_THROWS_AS(fit_loglog({1.0}, {1.0}), Error);
  CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, 0.0}), Error);
  CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0}), Error);
}

TEST_CASE("a planar sweep converges at rate eps") {
  const auto config = fixtures::random_configuration(2, 6, 17);
  const auto hull = build_hull(config);
  SweepOptions opt;
  opt.cap_count = 300;
  const auto report = theorem_sweep(config, hull, {1e-2, 1e-3, 1e-4},
                                    SamplePlan::global(2, 2000), 50, opt);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.diameter == config.diameter());
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    CHECK(report.rows[k].outer_dist < report.rows[k - 1].outer_dist);
    CHECK(report.rows[k].inner_dist < report.rows[k - 1].inner_dist);
  }
  for (const auto& r : report.rows) {
    CHECK(r.n_boundary == 50 * hull.facets().size());
    CHECK(r.n_samples >= 2000);
  }
  CHECK(report.outer_slope.slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("sweep input checks") {
  const auto config = fixtures::triangle();
  const auto hull = build_hull(config);
  CHECK_THROWS_AS(theorem_sweep(config, hull, {1e-3, 1e-2}, SamplePlan::global(2, 10), 5), Error);
  CHECK_THROWS_AS(theorem_sweep(config, hull, {}, SamplePlan::global(2, 10), 5), Error);
  CHECK_THROWS_AS(theorem_sweep(config, hull, {1e-2}, SamplePlan::global(3, 10), 5), Error);
}

TEST_CASE("edge probe of the triangle") {
  const auto config = fixtures::triangle();
  const auto hull = build_hull(config);
  SamplePlan plan = SamplePlan::global(2, 500, 3);
  plan.focus = CapFocus{std::nullopt, 0.5};
  const auto rows = face_limit_probe(config, hull, *hull.find_face({0, 1}), {1e-2, 1e-3}, plan);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].image_to_face < rows[0].image_to_face);
  CHECK(rows[1].image_to_face < 5e-3);
  CHECK(rows[1].face_to_image < 0.05);
  CHECK(rows[1].n_probe > 0);
  CHECK_THROWS_AS(face_limit_probe(config, hull, *hull.find_face({0}), {1e-2}, plan), Error);
}

TEST_CASE("collinear points converge to their segment") {
  SamplePlan plan = SamplePlan::global(2, 2000, 1);
  const auto rows = degenerate_limit_probe(fixtures::collinear_triple(), {1e-1, 1e-2, 1e-3}, plan);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].hausdorff < rows[0].hausdorff);
  CHECK(rows[2].hausdorff < 0.02 * fixtures::collinear_triple().diameter());
  CHECK(rows[2].image_to_hull <= 1e-9);
  try {
    degenerate_limit_probe(fixtures::triangle(), {1e-2}, plan);
    FAIL("full dimensional input accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RequiresDegenerate);
  }
}

TEST_CASE("graph family") {
  CHECK(graph_map(0.1, 0.1) == doctest::Approx(0.45));
  CHECK(graph_map(0.5, 0.0) == 0.0);
  CHECK(graph_map(0.2, -3.0) == doctest::Approx(-graph_map(0.2, 3.0)));

  std::vector<double> grid;
  for (int k = -4000; k <= 4000; ++k) grid.push_back(k * 10.0 / 4000);
  const auto rows = graph_limit_demo({1e-1, 1e-2, 1e-3}, grid);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].hausdorff > rows[1].hausdorff);
  CHECK(rows[1].hausdorff > rows[2].hausdorff);
  for (const auto& r : rows) {
    CHECK(r.range_max <= 1.0 - r.epsilon);
    CHECK(1.0 - r.epsilon - r.range_max <= r.range_tol);
    CHECK(r.range_min == doctest::Approx(-r.range_max));
  }
  CHECK_THROWS_AS(graph_limit_demo({0.1}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(graph_limit_demo({0.0}, grid), Error);
}

TEST_CASE("concave turns of closed polylines") {
  using V = Eigen::Vector2d;
  const std::vector<V> square = {V(0, 0), V(1, 0), V(1, 1), V(0, 1)};
  CHECK(concave_turns(square).empty());
  std::vector<V> reversed(square.rbegin(), square.rend());
  CHECK(concave_turns(reversed).empty());
  // Arrow head with a notch at index 2.
  const std::vector<V> notch = {V(0, 0), V(2, 0), V(1, 0.5), V(2, 1), V(0, 1)};
  CHECK(concave_turns(notch) == std::vector<int>{2});
  std::vector<V> notch_cw(notch.rbegin(), notch.rend());
  CHECK(concave_turns(notch_cw) == std::vector<int>{2});
  CHECK(concave_turns({V(0, 0), V(1, 0)}).empty());
}

TEST_CASE("the triangle image bends inward near the outward edge normals") {
  const auto turns = nonconvexity_probe(fixtures::triangle(), 0.1, SamplePlan::global(2, 2000));
  REQUIRE_FALSE(turns.empty());
  // Sample k sits at angle 2 pi k / 2000; the outward edge normals are at
  // pi/4, pi and 3pi/2.
  for (int site : {250, 1000, 1500}) {
    const bool near = std::any_of(turns.begin(), turns.end(), [&](int k) { return std::abs(k - site) <= 5; });
    CHECK(near);
  }
  CHECK(nonconvexity_probe(fixtures::regular_polygon(12), 0.1, SamplePlan::global(2, 2000)).empty());
  CHECK_THROWS_AS(nonconvexity_probe(fixtures::cube(), 0.1, SamplePlan::global(3, 10)), Error);
}
