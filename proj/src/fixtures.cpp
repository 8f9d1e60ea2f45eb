#include "hullmap/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hullmap/error.hpp"

namespace hullmap::fixtures {

using Rows = std::vector<std::vector<double>>;

PointConfiguration triangle() { return build_configuration(Rows{{0, 0}, {1, 0}, {0, 1}}); }

PointConfiguration unit_square() { return build_configuration(Rows{{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

PointConfiguration square_with_center() {
  return build_configuration(Rows{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
}

PointConfiguration regular_tetrahedron() {
  return build_configuration(Rows{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
}

PointConfiguration cube() {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 8; ++i) {
    pts.push_back({static_cast<double>(i & 1), static_cast<double>((i >> 1) & 1),
                   static_cast<double>((i >> 2) & 1)});
  }
  return build_configuration(pts);
}

PointConfiguration truncated_tetrahedron() {
  const std::vector<Eigen::Vector3d> tet = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<Point> pts;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) pts.emplace_back(tet[i] + (tet[j] - tet[i]) / 3.0);
    }
  }
  return build_configuration(pts);
}

PointConfiguration regular_polygon(int sides, double radius) {
  if (sides < 3) fail(ErrorCode::InvalidArgument, "a polygon needs at least 3 sides");
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < sides; ++k) {
    const double a = 2.0 * std::numbers::pi * k / sides;
    pts.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return build_configuration(pts);
}

PointConfiguration collinear_triple() { return build_configuration(Rows{{0, 0}, {1, 0.5}, {3, 1.5}}); }

PointConfiguration coplanar_quad() {
  return build_configuration(Rows{{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {0, 1.5, 0}});
}

PointConfiguration random_configuration(int dim, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  if (n < dim + 1) fail(ErrorCode::DegenerateConfiguration, "fewer than d + 1 points cannot span R^d");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
      Point p(dim);
      for (int k = 0; k < dim; ++k) p[k] = unif(rng);
      pts.push_back(p);
    }
    bool separated = true;
    for (int i = 0; i < n && separated; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if ((pts[i] - pts[j]).norm() < 0.05) {
          separated = false;
          break;
        }
      }
    }
    if (!separated) continue;
    auto config = build_configuration(pts);
    if (is_nondegenerate(config)) return config;
  }
  fail(ErrorCode::InvalidArgument, "no separated configuration found; too many points for the box");
}

PointConfiguration by_name(const std::string& name) {
  if (name == "triangle") return triangle();
  if (name == "square") return unit_square();
  if (name == "square_center") return square_with_center();
  if (name == "tetrahedron") return regular_tetrahedron();
  if (name == "cube") return cube();
  if (name == "truncated_tetrahedron") return truncated_tetrahedron();
  if (name == "collinear") return collinear_triple();
  if (name == "coplanar_quad") return coplanar_quad();
  if (name.rfind("polygon", 0) == 0 && name.size() > 7) return regular_polygon(std::stoi(name.substr(7)));
  fail(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
}

std::vector<std::string> names() {
  return {"triangle", "square", "square_center", "tetrahedron", "cube",
          "truncated_tetrahedron", "collinear", "coplanar_quad", "polygon12"};
}

}  // namespace hullmap::fixtures
