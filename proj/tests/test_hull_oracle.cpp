#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hullmap/boundary_map.hpp"
#include "hullmap/error.hpp"
#include "hullmap/fixtures.hpp"
#include "hullmap/hull_oracle.hpp"
#include "hullmap/io.hpp"
#include "support.hpp"

using namespace hullmap;
using testing::dir;
using Rows = std::vector<std::vector<double>>;

namespace {

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Planar hull boundary by gift wrapping, independent of the facet enumeration.
std::vector<Eigen::Vector2d> wrap(const PointConfiguration& c) {
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < c.size(); ++i) pts.emplace_back(c.point(i)[0], c.point(i)[1]);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
  };
  std::vector<Eigen::Vector2d> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double polygon_boundary_distance(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& p) {
  double best = 1e300;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    best = std::min(best, segment_distance(p, poly[k], poly[(k + 1) % poly.size()]));
  }
  return best;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("triangle hull") {
  const auto hull = build_hull(fixtures::triangle());
  CHECK(hull.facets().size() == 3);
  CHECK(hull.f_vector() == std::vector<int>{3, 3});
  CHECK(hull.euler_characteristic() == 0);
  CHECK(hull.vertices() == std::vector<int>{0, 1, 2});
  for (const auto& f : hull.facets()) {
    // The normal points away from the opposite corner.
    CHECK(f.outward_normal.coords().norm() == doctest::Approx(1.0));
    for (int i = 0; i < 3; ++i) {
      CHECK(f.outward_normal.coords().dot(hull.config().point(i)) <= f.offset + 1e-12);
    }
  }
}

TEST_CASE("cube and tetrahedron face lattices") {
  const auto cube = build_hull(fixtures::cube());
  CHECK(cube.f_vector() == std::vector<int>{8, 12, 6});
  CHECK(cube.euler_characteristic() == 2);
  CHECK(cube.lattice_edges().size() == 24 + 24);
  for (const auto& f : cube.facets()) CHECK(f.vertex_indices.size() == 4);

  const auto tet = build_hull(fixtures::regular_tetrahedron());
  CHECK(tet.f_vector() == std::vector<int>{4, 6, 4});

  const auto trunc = build_hull(fixtures::truncated_tetrahedron());
  CHECK(trunc.f_vector() == std::vector<int>{12, 18, 8});
  int hexagons = 0;
  for (const auto& f : trunc.facets()) hexagons += f.vertex_indices.size() == 6;
  CHECK(hexagons == 4);
}

TEST_CASE("random polytopes satisfy Euler's relation") {
  for (int s = 0; s < 12; ++s) {
    const auto hull = build_hull(fixtures::random_configuration(3, 5 + s % 8, 700 + s));
    CHECK(hull.euler_characteristic() == 2);
    const auto d2 = build_hull(fixtures::random_configuration(2, 4 + s, 800 + s));
    CHECK(d2.euler_characteristic() == 0);
    CHECK(d2.f_vector()[0] == static_cast<int>(wrap(d2.config()).size()));
  }
}

TEST_CASE("point classes") {
  const auto c = build_configuration(Rows{{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.2, 0.2}});
  const auto hull = build_hull(c);
  CHECK(hull.point_classes()[0] == PointClass::Vertex);
  CHECK(hull.point_classes()[3] == PointClass::BoundaryNonvertex);
  CHECK(hull.point_classes()[4] == PointClass::Interior);
  CHECK_FALSE(hull.containing_face(4).has_value());
  const auto& edge = hull.face(*hull.containing_face(3));
  CHECK(edge.dimension == 1);
  CHECK(edge.points == std::vector<int>{0, 1, 3});
  CHECK(edge.vertex_indices == std::vector<int>{0, 1});
  CHECK(hull.face(*hull.containing_face(1)).dimension == 0);
}

TEST_CASE("directions classify to the face of maximizers") {
  const auto hull = build_hull(fixtures::triangle());
  CHECK(classify_direction(hull, dir({-1, -1})).points == std::vector<int>{0});
  CHECK(classify_direction(hull, dir({0, -1})).points == std::vector<int>{0, 1});
  CHECK(classify_direction(hull, dir({1, 1})).points == std::vector<int>{1, 2});
  CHECK(classify_direction(hull, dir({1, 0.2})).points == std::vector<int>{1});
  CHECK(support_margin(hull, dir({1, 0.5})) == doctest::Approx(0.5 / std::hypot(1, 0.5)));

  const auto cube = build_hull(fixtures::cube());
  CHECK(classify_direction(cube, dir({0, 0, 1})).points == std::vector<int>{4, 5, 6, 7});
  CHECK(classify_direction(cube, dir({1, 1, 0})).points == std::vector<int>{3, 7});
  CHECK(classify_direction(cube, dir({1, 1, 1})).points == std::vector<int>{7});
}

TEST_CASE("a generous tie tolerance can produce a non-face") {
  const auto hull = build_hull(io::read_configuration(testing::data("hexagon.csv")));
  CHECK(classify_direction(hull, dir({1, 0})).points == std::vector<int>{0});
  try {
    classify_direction(hull, dir({1, 0}), 0.6);
    FAIL("tie accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousTie);
    CHECK(std::string(e.what()).find("{0,1,5}") != std::string::npos);
  }
}

TEST_CASE("normal spherical polytopes") {
  const auto tri = fixtures::triangle();
  CHECK(in_normal_spherical_polytope(tri, 0, dir({-1, -1}), true));
  CHECK(in_normal_spherical_polytope(tri, 0, dir({0, -1}), false));
  CHECK_FALSE(in_normal_spherical_polytope(tri, 0, dir({0, -1}), true));
  CHECK_FALSE(in_normal_spherical_polytope(tri, 0, dir({1, 0}), false));
}

TEST_CASE("boundary distances agree with segment distances in the plane") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> box(-1.6, 1.6);
  for (int s = 0; s < 10; ++s) {
    const auto c = fixtures::random_configuration(2, 4 + s, 900 + s);
    const auto hull = build_hull(c);
    const auto poly = wrap(c);
    for (int t = 0; t < 200; ++t) {
      const Eigen::Vector2d p(box(rng), box(rng));
      const double expect = polygon_boundary_distance(poly, p);
      REQUIRE(boundary_distance(hull, p).distance == doctest::Approx(expect).epsilon(1e-10).scale(1));
    }
  }
}

TEST_CASE("inside a polytope the boundary distance is the smallest facet slack") {
  std::mt19937_64 rng(22);
  for (int s = 0; s < 8; ++s) {
    const int d = 3 + s % 2;
    const auto c = fixtures::random_configuration(d, d + 3, 950 + s);
    const auto hull = build_hull(c);
    for (int t = 0; t < 100; ++t) {
      std::vector<double> w(c.size());
      std::gamma_distribution<double> g(1.0);
      double sum = 0;
      for (auto& x : w) sum += (x = g(rng));
      Point p = Point::Zero(d);
      for (int i = 0; i < c.size(); ++i) p += (w[i] / sum) * c.point(i);
      REQUIRE(contains(hull, p));
      const double slack = min_facet_slack(hull, p);
      REQUIRE(boundary_distance(hull, p).distance == doctest::Approx(slack).epsilon(1e-9));
      for (auto& x : w) x /= sum;
      REQUIRE(combination_depth(hull, w) == doctest::Approx(slack).epsilon(1e-9).scale(1));
    }
  }
}

TEST_CASE("nearest face reported by the boundary distance") {
  const auto hull = build_hull(fixtures::cube());
  const auto near_top = boundary_distance(hull, Eigen::Vector3d(0.5, 0.5, 0.9));
  CHECK(near_top.distance == doctest::Approx(0.1));
  CHECK(hull.face(near_top.face).points == std::vector<int>{4, 5, 6, 7});
  const auto corner = boundary_distance(hull, Eigen::Vector3d(2, 2, 2));
  CHECK(corner.distance == doctest::Approx(std::sqrt(3.0)));
  CHECK(hull.face(corner.face).points == std::vector<int>{7});
  CHECK(face_distance(hull, corner.face, Eigen::Vector3d(1, 1, 0)).distance == doctest::Approx(1.0));
}

TEST_CASE("containment") {
  const auto hull = build_hull(fixtures::triangle());
  CHECK(contains(hull, Eigen::Vector2d(0.2, 0.2)));
  CHECK(contains(hull, Eigen::Vector2d(0.5, 0.5), 1e-12));
  CHECK_FALSE(contains(hull, Eigen::Vector2d(0.6, 0.6)));
  CHECK(contains(hull, Eigen::Vector2d(0.5, 0.50001), 1e-4));
  CHECK(min_facet_slack(hull, Eigen::Vector2d(0.2, 0.2)) == doctest::Approx(0.2));
}

TEST_CASE("pulling triangulations cover each face") {
  const auto cube = build_hull(fixtures::cube());
  for (int f = 0; f < static_cast<int>(cube.facets().size()); ++f) {
    const auto simplices = triangulate_face(cube, cube.facet_face(f));
    CHECK(simplices.size() == 2);
    double area = 0;
    for (const auto& s : simplices) {
      const Eigen::Vector3d a = cube.config().point(s[0]);
      area += 0.5 * (Eigen::Vector3d(cube.config().point(s[1])) - a)
                        .cross(Eigen::Vector3d(cube.config().point(s[2])) - a)
                        .norm();
    }
    CHECK(area == doctest::Approx(1.0));
  }
  const auto trunc = build_hull(fixtures::truncated_tetrahedron());
  for (int f = 0; f < static_cast<int>(trunc.facets().size()); ++f) {
    const auto n = trunc.facets()[f].vertex_indices.size();
    CHECK(triangulate_face(trunc, trunc.facet_face(f)).size() == n - 2);
  }
}

TEST_CASE("boundary samples lie on their facets") {
  for (int s = 0; s < 4; ++s) {
    const int d = 2 + s % 3;
    const auto hull = build_hull(fixtures::random_configuration(d, d + 4, 1000 + s));
    const auto pts = sample_boundary(hull, 40, 3);
    REQUIRE(pts.size() == 40 * hull.facets().size());
    for (const auto& b : pts) {
      REQUIRE(boundary_distance(hull, b.point).distance <= 1e-12);
      REQUIRE(face_distance(hull, b.face, b.point).distance <= 1e-12);
      REQUIRE(hull.face(b.face).dimension == d - 1);
    }
    const auto again = sample_boundary(hull, 40, 3);
    REQUIRE(again.front().point == pts.front().point);
  }
}

TEST_CASE("face samples spread over the face") {
  const auto cube = build_hull(fixtures::cube());
  const int top = *cube.find_face({4, 5, 6, 7});
  const auto pts = sample_face(cube, top, 4000, 9);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : pts) {
    REQUIRE(p[2] == doctest::Approx(1.0));
    mean += p;
  }
  mean /= pts.size();
  CHECK(mean[0] == doctest::Approx(0.5).epsilon(0.05));
  CHECK(mean[1] == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("hull construction errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  CHECK(code_of([] { build_hull(fixtures::collinear_triple()); }) == ErrorCode::DegenerateConfiguration);
  CHECK(code_of([] { build_hull(fixtures::coplanar_quad()); }) == ErrorCode::DegenerateConfiguration);
  CHECK(code_of([] { build_hull(fixtures::regular_polygon(hull_point_limit(2) + 1)); }) ==
        ErrorCode::TooManyPoints);
  CHECK(code_of([] { fixtures::random_configuration(3, 3, 1); }) == ErrorCode::DegenerateConfiguration);
  const auto hull = build_hull(fixtures::triangle());
  CHECK(code_of([&] { classify_direction(hull, dir({1, 0, 0})); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { combination_depth(hull, {0.5, 0.5}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("describe_face names faces by dimension") {
  const auto cube = build_hull(fixtures::cube());
  CHECK(describe_face(cube, *cube.find_face({7})).rfind("vertex", 0) == 0);
  CHECK(describe_face(cube, *cube.find_face({3, 7})).rfind("edge", 0) == 0);
  CHECK(describe_face(cube, *cube.find_face({4, 5, 6, 7})).rfind("facet", 0) == 0);
  CHECK(sorted(cube.face(*cube.find_face({4, 5, 6, 7})).vertex_indices) == std::vector<int>{4, 5, 6, 7});
}
