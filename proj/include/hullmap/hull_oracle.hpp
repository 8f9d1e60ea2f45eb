#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hullmap/geom_core.hpp"

namespace hullmap {

/// Supporting hyperplane <outward_normal, x> = offset of a (d-1)-face.
/// `points` lists every configuration point on the hyperplane;
/// `vertex_indices` the hull vertices among them.
struct Facet {
  std::vector<int> points;
  std::vector<int> vertex_indices;
  UnitDirection outward_normal;
  double offset = 0.0;

  AffineHyperplane plane() const { return {outward_normal, offset}; }
};

/// Affine frame of a face: origin plus orthonormal basis of its span, and the
/// in-span half spaces <side_normals[k], x> <= side_offsets[k], one per
/// covering subface.
struct FaceFrame {
  Point origin;
  Eigen::MatrixXd basis;
  std::vector<Eigen::VectorXd> side_normals;
  std::vector<double> side_offsets;
};

struct Face {
  int id = -1;
  int dimension = 0;
  std::vector<int> points;
  std::vector<int> vertex_indices;
  std::vector<int> incident_facets;
  /// Covering relations in the lattice.
  std::vector<int> subfaces;
  std::vector<int> superfaces;
  FaceFrame frame;

  bool contains_face(const Face& other) const;
};

enum class PointClass { Vertex, BoundaryNonvertex, Interior };
const char* to_string(PointClass c);

class HullDescription {
 public:
  const PointConfiguration& config() const { return config_; }
  int dim() const { return config_.dim(); }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int id) const { return faces_.at(id); }
  const std::vector<PointClass>& point_classes() const { return classes_; }
  std::vector<int> vertices() const;
  /// Minimal face containing a boundary point; nullopt for interior points.
  std::optional<int> containing_face(int point) const { return containing_.at(point); }
  int facet_face(int facet) const { return facet_faces_.at(facet); }
  /// Face whose point set is exactly `sorted_points`.
  std::optional<int> find_face(const std::vector<int>& sorted_points) const;
  /// (subface, superface) covering pairs.
  std::vector<std::pair<int, int>> lattice_edges() const;
  /// Face counts by dimension 0 .. d-1.
  std::vector<int> f_vector() const;
  int euler_characteristic() const;

  double coplanarity_tol() const { return coplanarity_tol_; }
  double tie_tol() const { return tie_tol_; }

 private:
  friend HullDescription build_hull(const PointConfiguration&, double, double);
  friend HullDescription assemble_hull(const PointConfiguration&, std::vector<Facet>,
                                       double, double);

  PointConfiguration config_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
  std::vector<PointClass> classes_;
  std::vector<std::optional<int>> containing_;
  std::vector<int> facet_faces_;
  double coplanarity_tol_ = 0.0;
  double tie_tol_ = 0.0;
};

/// Largest configuration size accepted by the brute-force facet enumeration.
int hull_point_limit(int dim);

/// Negative tolerances select 1e-9 x diameter.
HullDescription build_hull(const PointConfiguration& config,
                           double coplanarity_tol = -1.0, double tie_tol = -1.0);

/// Rebuilds the lattice from known facets (used when reading hull documents).
HullDescription assemble_hull(const PointConfiguration& config,
                              std::vector<Facet> facets, double coplanarity_tol,
                              double tie_tol);

/// The face F with n in the relative interior of its normal spherical
/// polytope, found from the maximizers of <n, x_i>. Negative tie_tol uses the
/// hull default.
const Face& classify_direction(const HullDescription& hull,
                               const UnitDirection& n, double tie_tol = -1.0);

/// Gap between the top support value and the best value off the top face.
double support_margin(const HullDescription& hull, const UnitDirection& n,
                      double tie_tol = -1.0);

/// <n, n_ij> <= 0 (strict: < 0) for every j != i.
bool in_normal_spherical_polytope(const PointConfiguration& config, int i,
                                  const UnitDirection& n, bool strict);

struct FaceDistance {
  double distance = 0.0;
  int face = -1;
};

/// Distance from p to the face polytope and the smallest face holding the
/// nearest point.
FaceDistance face_distance(const HullDescription& hull, int face_id,
                           const Point& p);

/// Distance from p to the boundary of K.
FaceDistance boundary_distance(const HullDescription& hull, const Point& p);

/// Minimum over facets of offset - <n_F, p>; positive strictly inside K.
double min_facet_slack(const HullDescription& hull, const Point& p);

/// min_F sum_j lambda_j (offset_F - <n_F, x_j>): the depth below every
/// facet of the point sum_j lambda_j x_j, evaluated without forming it.
/// Stays accurate when the point is closer to the boundary than its
/// coordinates can resolve.
double combination_depth(const HullDescription& hull, const std::vector<double>& lambdas);

bool contains(const HullDescription& hull, const Point& p, double tol = 0.0);

/// Pulling triangulation of a face into simplices of vertex indices.
std::vector<std::vector<int>> triangulate_face(const HullDescription& hull,
                                               int face_id);

struct BoundarySample {
  Point point;
  int face = -1;
};

/// per_facet uniform samples on every facet, deterministic in seed.
std::vector<BoundarySample> sample_boundary(const HullDescription& hull,
                                            int per_facet, std::uint64_t seed);

/// Uniform samples on one face.
std::vector<Point> sample_face(const HullDescription& hull, int face_id,
                               int count, std::uint64_t seed);

std::string describe_face(const HullDescription& hull, int face_id);

}  // namespace hullmap
