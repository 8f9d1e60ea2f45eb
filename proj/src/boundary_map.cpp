#include "hullmap/boundary_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "hullmap/error.hpp"

namespace hullmap {
namespace {

kernels::MapInput map_input(const PointConfiguration& config, double epsilon) {
  return {config.dim(), config.size(), config.flat_coords().data(),
          config.flat_pair_directions().data(), epsilon};
}

void check_direction(const PointConfiguration& config, const UnitDirection& n) {
  if (n.dim() != config.dim()) {
    fail(ErrorCode::DimensionMismatch, "direction has dimension " +
                                           std::to_string(n.dim()) + ", configuration " +
                                           std::to_string(config.dim()));
  }
}

}  // namespace

void validate_map_inputs(const PointConfiguration& config, double epsilon) {
  // The lower bound keeps every factor a normal double.
  if (!(epsilon > 0.0) || !(epsilon <= 1.0) || epsilon < 1e-300) {
    fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (config.size() > kMaxPoints || config.dim() > kMaxDim) {
    fail(ErrorCode::NumericalOverflow,
         "configuration exceeds n <= " + std::to_string(kMaxPoints) + ", d <= " +
             std::to_string(kMaxDim));
  }
}

double c_factor(const PointConfiguration& config, int i, int j, double epsilon,
                const UnitDirection& n) {
  const int count = config.size();
  if (i < 0 || j < 0 || i >= count || j >= count || i == j) {
    fail(ErrorCode::IndexOutOfRange,
         "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  check_direction(config, n);
  const auto a = config.pair_direction(i, j);
  double dot = n[0] * a[0];
  for (int k = 1; k < config.dim(); ++k) dot = dot + n[k] * a[k];
  return epsilon + std::max(0.0, -dot);
}

WeightVector weights(const PointConfiguration& config, double epsilon,
                     const UnitDirection& n) {
  validate_map_inputs(config, epsilon);
  check_direction(config, n);
  const int count = config.size();
  std::vector<double> mant(count), expo(count);
  const auto in = map_input(config, epsilon);
  kernels::product_factors(in, n.coords().data(), mant.data(), expo.data());

  WeightVector w;
  w.epsilon = epsilon;
  w.direction = n;
  w.lambdas.resize(count);
  w.log_c.resize(count);
  kernels::normalize_factors(count, mant.data(), expo.data(), w.lambdas.data());
  for (int i = 0; i < count; ++i) {
    w.log_c[i] = std::log(mant[i]) + expo[i] * std::numbers::ln2;
  }
  return w;
}

MapImage evaluate(const PointConfiguration& config, double epsilon,
                  const UnitDirection& n) {
  validate_map_inputs(config, epsilon);
  check_direction(config, n);
  MapImage img;
  img.direction = n;
  img.point.resize(config.dim());
  kernels::detail::map_images_scalar(
      map_input(config, epsilon),
      std::span<const double>(n.coords().data(), config.dim()),
      std::span<double>(img.point.data(), config.dim()));
  return img;
}

std::vector<double> evaluate_flat(const PointConfiguration& config,
                                  double epsilon,
                                  const std::vector<double>& directions,
                                  const BatchOptions& options) {
  validate_map_inputs(config, epsilon);
  const int d = config.dim();
  if (directions.size() % d != 0) {
    fail(ErrorCode::DimensionMismatch, "direction buffer is not a multiple of the dimension");
  }
  const std::size_t m = directions.size() / d;
  std::vector<double> images(directions.size());
  if (m == 0) return images;

  const auto in = map_input(config, epsilon);
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  // Chunks are multiples of 4 directions so the SIMD tail is only ever the
  // final chunk's; results do not depend on the split either way.
  constexpr std::size_t kMinChunk = 256;
  const std::size_t chunks = std::min<std::size_t>(threads, (m + kMinChunk - 1) / kMinChunk);
  if (chunks <= 1) {
    kernels::map_images(options.isa, in, directions, images);
    return images;
  }
  std::size_t per = (m + chunks - 1) / chunks;
  per = (per + 3) / 4 * 4;
  std::vector<std::jthread> pool;
  for (std::size_t begin = 0; begin < m; begin += per) {
    const std::size_t end = std::min(m, begin + per);
    pool.emplace_back([&, begin, end] {
      kernels::map_images(
          options.isa, in,
          std::span<const double>(directions).subspan(begin * d, (end - begin) * d),
          std::span<double>(images).subspan(begin * d, (end - begin) * d));
    });
  }
  return images;
}

std::vector<double> flatten(const std::vector<UnitDirection>& dirs) {
  std::vector<double> flat;
  if (dirs.empty()) return flat;
  const int d = dirs.front().dim();
  flat.reserve(dirs.size() * d);
  for (const auto& u : dirs) {
    if (u.dim() != d) fail(ErrorCode::DimensionMismatch, "mixed direction dimensions");
    flat.insert(flat.end(), u.coords().data(), u.coords().data() + d);
  }
  return flat;
}

std::vector<MapImage> evaluate_batch(const PointConfiguration& config,
                                     double epsilon,
                                     const std::vector<UnitDirection>& dirs,
                                     const BatchOptions& options) {
  for (const auto& u : dirs) check_direction(config, u);
  const auto flat = evaluate_flat(config, epsilon, flatten(dirs), options);
  const int d = config.dim();
  std::vector<MapImage> out;
  out.reserve(dirs.size());
  for (std::size_t r = 0; r < dirs.size(); ++r) {
    out.push_back({dirs[r], Eigen::Map<const Eigen::VectorXd>(flat.data() + r * d, d)});
  }
  return out;
}

double limit_factor(const PointConfiguration& config, int i,
                    const UnitDirection& n) {
  if (i < 0 || i >= config.size()) fail(ErrorCode::IndexOutOfRange, "point index " + std::to_string(i));
  check_direction(config, n);
  double prod = 1.0;
  for (int j = 0; j < config.size(); ++j) {
    if (j == i) continue;
    const auto a = config.pair_direction(i, j);
    double dot = n[0] * a[0];
    for (int k = 1; k < config.dim(); ++k) dot = dot + n[k] * a[k];
    prod *= std::max(0.0, -dot);
    if (prod == 0.0) break;
  }
  return prod;
}

}  // namespace hullmap
