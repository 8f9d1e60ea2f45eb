#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hullmap {

using Point = Eigen::VectorXd;

/// A point of S^{d-1}. Construction normalizes; a zero vector is rejected.
class UnitDirection {
 public:
  UnitDirection() = default;
  explicit UnitDirection(const Eigen::VectorXd& v);
  /// Wraps a vector that is already unit length (checked to 1e-12).
  static UnitDirection from_unit(const Eigen::VectorXd& v);

  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int k) const { return coords_[k]; }

 private:
  Eigen::VectorXd coords_;
};

/// {x : <normal, x> = offset}; the closed half space is <normal, x> <= offset.
struct AffineHyperplane {
  UnitDirection normal;
  double offset = 0.0;

  double signed_distance(const Point& x) const {
    return normal.coords().dot(x) - offset;
  }
  bool contains(const Point& x, double tol) const {
    return std::abs(signed_distance(x)) <= tol;
  }
};

/// n labelled, pairwise distinct points of R^d with cached unit directions
/// n_ij = (x_j - x_i) / |x_j - x_i|. Immutable once built.
class PointConfiguration {
 public:
  int dim() const { return dim_; }
  int size() const { return count_; }

  Point point(int i) const;
  std::span<const double> point_span(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  /// n_ij, zero for i == j.
  std::span<const double> pair_direction(int i, int j) const {
    return {pair_dirs_.data() +
                (static_cast<std::size_t>(i) * count_ + j) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  /// Row-major n x d coordinates.
  const std::vector<double>& flat_coords() const { return coords_; }
  /// Row-major n x n x d pairwise directions.
  const std::vector<double>& flat_pair_directions() const { return pair_dirs_; }

  double diameter() const { return diameter_; }
  double min_separation() const { return min_separation_; }

 private:
  friend PointConfiguration build_configuration(
      const std::vector<std::vector<double>>&, double);

  int dim_ = 0;
  int count_ = 0;
  std::vector<double> coords_;
  std::vector<double> pair_dirs_;
  double diameter_ = 0.0;
  double min_separation_ = 0.0;
};

/// Negative distinctness_tol selects the default, 1e-9 x diameter.
inline constexpr double kDefaultRelativeTol = 1e-9;

PointConfiguration build_configuration(
    const std::vector<std::vector<double>>& raw_points,
    double distinctness_tol = -1.0);

PointConfiguration build_configuration(const std::vector<Point>& raw_points,
                                       double distinctness_tol = -1.0);

/// Affine rank of the configuration (rank of x_i - x_0), using singular
/// values relative to the largest.
int affine_rank(const PointConfiguration& config, double rank_tol = 1e-9);
int affine_rank(const std::vector<Point>& pts, double rank_tol = 1e-9);

bool is_nondegenerate(const PointConfiguration& config,
                      double rank_tol = 1e-9);

std::vector<std::vector<double>> to_rows(const PointConfiguration& config);

}  // namespace hullmap
