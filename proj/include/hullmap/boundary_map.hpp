#pragma once

#include <vector>

#include "hullmap/geom_core.hpp"
#include "hullmap/kernels.hpp"

namespace hullmap {

inline constexpr int kMaxPoints = 1000;
inline constexpr int kMaxDim = 6;

/// Barycentric weights lambda_i(eps, n) of f_eps(n), plus the natural log of
/// each unnormalized product c_i(eps, n).
struct WeightVector {
  double epsilon = 0.0;
  UnitDirection direction;
  std::vector<double> lambdas;
  std::vector<double> log_c;
};

struct MapImage {
  UnitDirection direction;
  Point point;
};

struct BatchOptions {
  kernels::Isa isa = kernels::best_isa();
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// c_ij(eps, n) = eps + max(0, -<n, n_ij>).
double c_factor(const PointConfiguration& config, int i, int j, double epsilon,
                const UnitDirection& n);

WeightVector weights(const PointConfiguration& config, double epsilon,
                     const UnitDirection& n);

MapImage evaluate(const PointConfiguration& config, double epsilon,
                  const UnitDirection& n);

std::vector<MapImage> evaluate_batch(const PointConfiguration& config,
                                     double epsilon,
                                     const std::vector<UnitDirection>& dirs,
                                     const BatchOptions& options = {});

/// Row-major images for row-major directions; the hot path behind
/// evaluate_batch.
std::vector<double> evaluate_flat(const PointConfiguration& config,
                                  double epsilon,
                                  const std::vector<double>& directions,
                                  const BatchOptions& options = {});

/// lim_{eps->0} c_i(eps, n) = prod_{j != i} max(0, -<n, n_ij>).
double limit_factor(const PointConfiguration& config, int i,
                    const UnitDirection& n);

/// Throws unless eps is in (0, 1] and the configuration is within the
/// documented size limits.
void validate_map_inputs(const PointConfiguration& config, double epsilon);

std::vector<double> flatten(const std::vector<UnitDirection>& dirs);

}  // namespace hullmap
