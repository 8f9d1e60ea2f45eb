#pragma once

#include <vector>

#include "hullmap/hull_oracle.hpp"

namespace hullmap {

/// Normal cone of a face, generated by the outward normals of the facets
/// containing it. Its dimension is d - dim(face).
struct NormalCone {
  int face = -1;
  std::vector<int> generator_facets;
  std::vector<UnitDirection> generators;
  int dimension = 0;
};

std::vector<NormalCone> normal_fan(const HullDescription& hull);

/// Unit vector along the sum of a face's cone generators; lies in the
/// relative interior of its normal spherical polytope.
UnitDirection cone_axis(const HullDescription& hull, int face_id);

/// One spherical cell S_F per face, stored by its vertex directions.
struct SphericalCell {
  int face = -1;
  int dimension = 0;  // d - 1 - dim F
  std::vector<int> vertex_facets;
  std::vector<UnitDirection> vertices;
  /// Faces G whose cell has this cell in its boundary (the covering
  /// subfaces of F; containment is reversed in the dual).
  std::vector<int> in_boundary_of;
};

struct SphericalDualComplex {
  std::vector<SphericalCell> cells;
  /// Cell counts by cell dimension 0 .. d-1.
  std::vector<int> f_vector;
};

SphericalDualComplex spherical_dual(const HullDescription& hull);

struct GaussValue {
  int face = -1;
  std::vector<UnitDirection> normals;  // vertices of S_x
};

/// Normal spherical polytope of the smallest face containing the boundary
/// point x.
GaussValue gauss_map(const HullDescription& hull, const Point& x, double tol = -1.0);

/// Same contract as classify_direction.
const Face& inverse_gauss(const HullDescription& hull, const UnitDirection& n,
                          double tie_tol = -1.0);

/// True iff n classifies to a face contained in F. Requires dim F >= 1.
bool w_set_contains(const HullDescription& hull, int face_id, const UnitDirection& n);

/// Flattened spherical dual of a 3-polytope: one planar-or-not cell per
/// vertex of B, listing the incident facet normals in cyclic order.
struct FlatCell {
  int vertex = -1;
  std::vector<int> facets;
  std::vector<Eigen::Vector3d> corners;
};

std::vector<FlatCell> flattened_spherical_dual(const HullDescription& hull);

/// Hull of the facet normals.
HullDescription outer_normal_transform(const HullDescription& hull);

struct DualVerdict {
  bool equivalent = false;
  bool flattened_convex = false;
};

inline constexpr double kFlatCellTol = 1e-7;

DualVerdict dual_combinatorics_check(const HullDescription& hull);

/// Vertex-facet incidence isomorphism test. rows x cols boolean matrices are
/// given as row-wise column lists.
bool incidence_isomorphic(const std::vector<std::vector<int>>& a, int a_cols,
                          const std::vector<std::vector<int>>& b, int b_cols);

}  // namespace hullmap
