#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hullmap/boundary_map.hpp"
#include "hullmap/hull_oracle.hpp"
#include "hullmap/sphere_sampling.hpp"

namespace hullmap {

/// Points of one ambient dimension, stored row-major.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(int dim, std::vector<double> rows);
  static FiniteSet from_points(int dim, const std::vector<Point>& pts);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ ? rows_.size() / dim_ : 0; }
  bool empty() const { return size() == 0; }
  Point point(std::size_t i) const;
  const std::vector<double>& rows() const { return rows_; }

 private:
  int dim_ = 0;
  std::vector<double> rows_;
};

using DistanceOracle = std::function<double(const Point&)>;

double directed_hausdorff(const FiniteSet& a, const DistanceOracle& target);
/// Brute force over b through the nearest-point kernel.
double directed_hausdorff(const FiniteSet& a, const FiniteSet& b,
                          kernels::Isa isa = kernels::best_isa());
/// Target is the boundary of the hull.
double directed_hausdorff(const FiniteSet& a, const HullDescription& hull);

double symmetric_hausdorff(const FiniteSet& a, const FiniteSet& b,
                           kernels::Isa isa = kernels::best_isa());

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square of the log-log residuals.
  double residual = 0.0;
};

/// Least squares of log(y) against log(x) over the last `last` entries.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t last = 3);

struct SweepRow {
  double epsilon = 0.0;
  double outer_dist = 0.0;
  double inner_dist = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_boundary = 0;
  double wall_ms = 0.0;
};

struct ConvergenceReport {
  std::string config_id;
  double diameter = 0.0;
  std::vector<SweepRow> rows;
  SlopeFit outer_slope;
};

struct SweepOptions {
  /// Directions per cap in the facet-normal cap stack.
  int cap_count = 2000;
  double cap_radius = 0.5;
  /// Also stack caps on the cone axes of faces below facet dimension.
  bool lower_face_caps = false;
  BatchOptions batch;
};

inline const std::vector<double> kDefaultEpsilons = {1e-1, 1e-2, 1e-3, 1e-4};

ConvergenceReport theorem_sweep(const PointConfiguration& config,
                                const HullDescription& hull,
                                const std::vector<double>& epsilons,
                                const SamplePlan& global_plan,
                                int boundary_per_facet,
                                const SweepOptions& options = {});

struct ProbeRow {
  double epsilon = 0.0;
  double image_to_face = 0.0;
  double face_to_image = 0.0;
  std::size_t n_probe = 0;
};

/// Probe directions come from caps around the cone axis of
/// probe_plan.focus->face (F itself when unset), kept only inside W_F.
std::vector<ProbeRow> face_limit_probe(const PointConfiguration& config,
                                       const HullDescription& hull, int face_id,
                                       const std::vector<double>& epsilons,
                                       const SamplePlan& probe_plan);

struct DegenerateRow {
  double epsilon = 0.0;
  double hausdorff = 0.0;
  double image_to_hull = 0.0;
  double hull_to_image = 0.0;
};

/// For a configuration inside a proper affine subspace: distance between the
/// image of the sphere and the full lower dimensional hull K.
std::vector<DegenerateRow> degenerate_limit_probe(const PointConfiguration& config,
                                                  const std::vector<double>& epsilons,
                                                  const SamplePlan& plan);

/// (2/pi)(1 - eps) atan(x / eps).
double graph_map(double epsilon, double x);

struct GraphRow {
  double epsilon = 0.0;
  double hausdorff = 0.0;
  double range_min = 0.0;
  double range_max = 0.0;
  /// Largest gap between the sampled range and +-(1 - eps) allowed by the
  /// finite interval [-L, L].
  double range_tol = 0.0;
};

std::vector<GraphRow> graph_limit_demo(const std::vector<double>& epsilons,
                                       const std::vector<double>& x_grid);

/// Indices of turns of the closed polyline whose sign opposes its
/// orientation.
std::vector<int> concave_turns(const std::vector<Eigen::Vector2d>& polyline,
                               double rel_tol = 1e-12);

/// Concave turns of the closed image polyline f_eps(n_k) for d = 2 and an
/// angularly ordered plan.
std::vector<int> nonconvexity_probe(const PointConfiguration& config, double epsilon,
                                    const SamplePlan& plan);

}  // namespace hullmap
