#include "hullmap/normal_fan_dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>

#include "hullmap/error.hpp"

namespace hullmap {
namespace {

std::size_t common_count(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c, ++i, ++j;
    }
  }
  return c;
}

void require_3d(const HullDescription& hull) {
  if (hull.dim() != 3) {
    fail(ErrorCode::DimensionUnsupported, "flattened duals are defined for d = 3 only");
  }
}

}  // namespace

std::vector<NormalCone> normal_fan(const HullDescription& hull) {
  std::vector<NormalCone> cones;
  for (const auto& f : hull.faces()) {
    NormalCone c;
    c.face = f.id;
    c.generator_facets = f.incident_facets;
    for (int k : f.incident_facets) c.generators.push_back(hull.facets()[k].outward_normal);
    c.dimension = hull.dim() - f.dimension;
    cones.push_back(std::move(c));
  }
  return cones;
}

UnitDirection cone_axis(const HullDescription& hull, int face_id) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(hull.dim());
  for (int k : hull.face(face_id).incident_facets) sum += hull.facets()[k].outward_normal.coords();
  return UnitDirection(sum);
}

SphericalDualComplex spherical_dual(const HullDescription& hull) {
  SphericalDualComplex cx;
  cx.f_vector.assign(hull.dim(), 0);
  for (const auto& f : hull.faces()) {
    SphericalCell cell;
    cell.face = f.id;
    cell.dimension = hull.dim() - 1 - f.dimension;
    cell.vertex_facets = f.incident_facets;
    for (int k : f.incident_facets) cell.vertices.push_back(hull.facets()[k].outward_normal);
    cell.in_boundary_of = f.subfaces;
    ++cx.f_vector[cell.dimension];
    cx.cells.push_back(std::move(cell));
  }
  return cx;
}

GaussValue gauss_map(const HullDescription& hull, const Point& x, double tol) {
  const double t = tol < 0.0 ? hull.coplanarity_tol() : tol;
  if (x.size() != hull.dim()) fail(ErrorCode::DimensionMismatch, "point dimension");
  const auto bd = boundary_distance(hull, x);
  if (bd.distance > t) {
    fail(ErrorCode::NotOnBoundary, "point is " + std::to_string(bd.distance) + " from the boundary");
  }
  std::vector<int> active;
  for (int k = 0; k < static_cast<int>(hull.facets().size()); ++k) {
    const auto& f = hull.facets()[k];
    if (std::abs(f.offset - f.outward_normal.coords().dot(x)) <= t) active.push_back(k);
  }
  int face = bd.face;
  if (!active.empty()) {
    std::vector<int> pts = hull.facets()[active.front()].points;
    for (int k : active) {
      std::vector<int> next;
      const auto& other = hull.facets()[k].points;
      std::set_intersection(pts.begin(), pts.end(), other.begin(), other.end(), std::back_inserter(next));
      pts.swap(next);
    }
    if (auto id = hull.find_face(pts)) face = *id;
  }
  GaussValue g;
  g.face = face;
  for (int k : hull.face(face).incident_facets) g.normals.push_back(hull.facets()[k].outward_normal);
  return g;
}

const Face& inverse_gauss(const HullDescription& hull, const UnitDirection& n, double tie_tol) {
  return classify_direction(hull, n, tie_tol);
}

bool w_set_contains(const HullDescription& hull, int face_id, const UnitDirection& n) {
  const Face& f = hull.face(face_id);
  if (f.dimension < 1) fail(ErrorCode::InvalidArgument, "W_F is defined for faces of dimension >= 1");
  return f.contains_face(classify_direction(hull, n));
}

std::vector<FlatCell> flattened_spherical_dual(const HullDescription& hull) {
  require_3d(hull);
  std::vector<FlatCell> cells;
  for (const auto& f : hull.faces()) {
    if (f.dimension != 0) continue;
    const Eigen::Vector3d axis = cone_axis(hull, f.id).coords();
    Eigen::Vector3d e1 = axis.unitOrthogonal();
    Eigen::Vector3d e2 = axis.cross(e1);
    std::vector<std::pair<double, int>> order;
    for (int k : f.incident_facets) {
      const Eigen::Vector3d nf = hull.facets()[k].outward_normal.coords();
      order.emplace_back(std::atan2(nf.dot(e2), nf.dot(e1)), k);
    }
    std::sort(order.begin(), order.end());
    FlatCell cell;
    cell.vertex = f.vertex_indices.front();
    for (auto& [angle, k] : order) {
      cell.facets.push_back(k);
      cell.corners.push_back(hull.facets()[k].outward_normal.coords());
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

HullDescription outer_normal_transform(const HullDescription& hull) {
  std::vector<Point> normals;
  for (const auto& f : hull.facets()) normals.push_back(f.outward_normal.coords());
  return build_hull(build_configuration(normals));
}

bool incidence_isomorphic(const std::vector<std::vector<int>>& a, int a_cols,
                          const std::vector<std::vector<int>>& b, int b_cols) {
  if (a.size() != b.size() || a_cols != b_cols) return false;
  const std::size_t rows = a.size();
  auto sorted_rows = [](std::vector<std::vector<int>> m) {
    for (auto& r : m) std::sort(r.begin(), r.end());
    return m;
  };
  const auto ra = sorted_rows(a);
  const auto rb = sorted_rows(b);
  auto degrees = [](const std::vector<std::vector<int>>& m) {
    std::vector<std::size_t> d;
    for (const auto& r : m) d.push_back(r.size());
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(ra) != degrees(rb)) return false;

  auto column_sets = [rows](const std::vector<std::vector<int>>& m, int cols) {
    std::vector<std::vector<int>> c(cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (int col : m[r]) c[col].push_back(static_cast<int>(r));
    }
    return c;
  };
  const auto ca = column_sets(ra, a_cols);
  const auto cb = column_sets(rb, b_cols);

  std::vector<int> map(rows, -1);
  std::vector<bool> used(rows, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t r) -> bool {
    if (r == rows) {
      // Rows fixed; columns must match as multisets of mapped row sets.
      std::vector<std::vector<int>> mapped;
      for (const auto& col : ca) {
        std::vector<int> m;
        for (int x : col) m.push_back(map[x]);
        std::sort(m.begin(), m.end());
        mapped.push_back(std::move(m));
      }
      auto target = cb;
      std::sort(mapped.begin(), mapped.end());
      std::sort(target.begin(), target.end());
      return mapped == target;
    }
    for (std::size_t s = 0; s < rows; ++s) {
      if (used[s] || rb[s].size() != ra[r].size()) continue;
      bool ok = true;
      for (std::size_t prev = 0; prev < r && ok; ++prev) {
        ok = common_count(ra[r], ra[prev]) == common_count(rb[s], rb[map[prev]]);
      }
      if (!ok) continue;
      map[r] = static_cast<int>(s);
      used[s] = true;
      if (extend(r + 1)) return true;
      used[s] = false;
    }
    map[r] = -1;
    return false;
  };
  return extend(0);
}

DualVerdict dual_combinatorics_check(const HullDescription& hull) {
  require_3d(hull);
  DualVerdict verdict;

  const auto cells = flattened_spherical_dual(hull);
  const auto& facets = hull.facets();
  bool convex = true;
  for (const auto& cell : cells) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& c : cell.corners) centroid += c;
    centroid /= static_cast<double>(cell.corners.size());
    Eigen::MatrixXd centred(static_cast<int>(cell.corners.size()), 3);
    for (std::size_t r = 0; r < cell.corners.size(); ++r) centred.row(r) = (cell.corners[r] - centroid).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeFullV);
    Eigen::Vector3d normal = svd.matrixV().col(2);
    if (normal.dot(centroid) < 0.0) normal = -normal;
    const double offset = normal.dot(centroid);
    for (const auto& c : cell.corners) {
      if (std::abs(normal.dot(c) - offset) > kFlatCellTol) convex = false;
    }
    if (offset <= kFlatCellTol) convex = false;
    for (int k = 0; k < static_cast<int>(facets.size()); ++k) {
      if (std::find(cell.facets.begin(), cell.facets.end(), k) != cell.facets.end()) continue;
      if (normal.dot(facets[k].outward_normal.coords()) >= offset - kFlatCellTol) convex = false;
    }
  }
  verdict.flattened_convex = convex;

  // Transform: rows = its vertices, columns = its facets.
  const HullDescription transform = outer_normal_transform(hull);
  const auto verts = transform.vertices();
  std::vector<std::vector<int>> a;
  for (int v : verts) {
    std::vector<int> row;
    for (int k = 0; k < static_cast<int>(transform.facets().size()); ++k) {
      const auto& pts = transform.facets()[k].points;
      if (std::binary_search(pts.begin(), pts.end(), v)) row.push_back(k);
    }
    a.push_back(std::move(row));
  }
  // Dual of B: rows = facets of B, columns = vertices of B.
  const auto bverts = hull.vertices();
  std::vector<std::vector<int>> b;
  for (const auto& f : facets) {
    std::vector<int> row;
    for (int v : f.vertex_indices) {
      row.push_back(static_cast<int>(std::lower_bound(bverts.begin(), bverts.end(), v) - bverts.begin()));
    }
    b.push_back(std::move(row));
  }
  verdict.equivalent = incidence_isomorphic(a, static_cast<int>(transform.facets().size()), b,
                                            static_cast<int>(bverts.size()));
  return verdict;
}

}  // namespace hullmap
