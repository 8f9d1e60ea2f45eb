#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hullmap/geom_core.hpp"

namespace hullmap::fixtures {

/// (0,0), (1,0), (0,1).
PointConfiguration triangle();
PointConfiguration unit_square();
/// Unit square corners followed by its centre (index 4).
PointConfiguration square_with_center();
/// Alternate corners of the cube [-1,1]^3.
PointConfiguration regular_tetrahedron();
/// {0,1}^3, index = x + 2y + 4z.
PointConfiguration cube();
/// Regular tetrahedron with every corner cut a third of the way along each
/// edge: 12 points, 4 hexagons and 4 triangles.
PointConfiguration truncated_tetrahedron();
PointConfiguration regular_polygon(int sides, double radius = 1.0);
/// Three points on a line in the plane.
PointConfiguration collinear_triple();
/// Four points of the plane z = 0 inside R^3.
PointConfiguration coplanar_quad();

/// n uniform points of [-1,1]^d, resampled until nondegenerate and
/// separated by at least 0.05. Throws when n < d + 1 or the separation is
/// out of reach.
PointConfiguration random_configuration(int dim, int n, std::uint64_t seed);

/// Lookup by name: triangle, square, square_center, tetrahedron, cube,
/// truncated_tetrahedron, collinear, coplanar_quad, polygon<k>.
PointConfiguration by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace hullmap::fixtures
