#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullmap/geom_core.hpp"

namespace hullmap {

enum class SampleStrategy { UniformGrid2d, Fibonacci3d, GaussianRandom };

SampleStrategy parse_strategy(const std::string& text);
const char* to_string(SampleStrategy s);
/// uniform_grid_2d for d = 2, fibonacci_3d for d = 3, gaussian_random otherwise.
SampleStrategy default_strategy(int dim);

struct CapFocus {
  /// Face the cap is centred on, when the caller targets a face.
  std::optional<int> face;
  /// Angular radius in radians, in (0, pi].
  double cap_radius = 0.5;
};

struct SamplePlan {
  int dim = 3;
  SampleStrategy strategy = SampleStrategy::Fibonacci3d;
  int count = 1000;
  std::uint64_t seed = 0;
  std::optional<CapFocus> focus;

  static SamplePlan global(int dim, int count, std::uint64_t seed = 0);
};

std::vector<UnitDirection> sample(const SamplePlan& plan);

/// `count` directions within angular distance cap_radius of `center`.
std::vector<UnitDirection> sample_near(const SamplePlan& plan,
                                       const UnitDirection& center);

/// Caps of radii outer, outer/sqrt(10), ... down to the first radius at or
/// below inner, each holding per_cap directions.
std::vector<UnitDirection> sample_near_nested(const UnitDirection& center,
                                              double outer, double inner,
                                              int per_cap, std::uint64_t seed);

/// Angle between two unit vectors, accurate near 0 and pi.
double angular_distance(const UnitDirection& a, const UnitDirection& b);

}  // namespace hullmap
