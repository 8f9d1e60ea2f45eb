#include "hullmap/sphere_sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hullmap/error.hpp"

namespace hullmap {
namespace {

constexpr double kPi = std::numbers::pi;

void validate(const SamplePlan& plan) {
  if (plan.dim < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (plan.count < 1) fail(ErrorCode::InvalidArgument, "sample count must be >= 1");
  if (plan.strategy == SampleStrategy::UniformGrid2d && plan.dim != 2) {
    fail(ErrorCode::StrategyDimensionMismatch, "uniform_grid_2d requires d = 2");
  }
  if (plan.strategy == SampleStrategy::Fibonacci3d && plan.dim != 3) {
    fail(ErrorCode::StrategyDimensionMismatch, "fibonacci_3d requires d = 3");
  }
}

UnitDirection gaussian_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  for (;;) {
    for (int k = 0; k < dim; ++k) v[k] = normal(rng);
    if (v.norm() > 1e-8) return UnitDirection(v);
  }
}

// Reflection taking e_{d-1} to `center`.
Eigen::MatrixXd frame_for(const UnitDirection& center) {
  const int d = center.dim();
  Eigen::VectorXd v = -center.coords();
  v[d - 1] += 1.0;
  const double vv = v.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
  if (vv > 1e-30) h -= 2.0 * v * v.transpose() / vv;
  return h;
}

}  // namespace

SampleStrategy parse_strategy(const std::string& text) {
  if (text == "uniform_grid_2d") return SampleStrategy::UniformGrid2d;
  if (text == "fibonacci_3d") return SampleStrategy::Fibonacci3d;
  if (text == "gaussian_random") return SampleStrategy::GaussianRandom;
  fail(ErrorCode::InvalidArgument, "unknown sampling strategy '" + text + "'");
}

const char* to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::UniformGrid2d: return "uniform_grid_2d";
    case SampleStrategy::Fibonacci3d: return "fibonacci_3d";
    case SampleStrategy::GaussianRandom: return "gaussian_random";
  }
  return "?";
}

SampleStrategy default_strategy(int dim) {
  if (dim == 2) return SampleStrategy::UniformGrid2d;
  if (dim == 3) return SampleStrategy::Fibonacci3d;
  return SampleStrategy::GaussianRandom;
}

SamplePlan SamplePlan::global(int dim, int count, std::uint64_t seed) {
  SamplePlan p;
  p.dim = dim;
  p.strategy = default_strategy(dim);
  p.count = count;
  p.seed = seed;
  return p;
}

std::vector<UnitDirection> sample(const SamplePlan& plan) {
  validate(plan);
  std::vector<UnitDirection> out;
  out.reserve(plan.count);
  const int n = plan.count;
  switch (plan.strategy) {
    case SampleStrategy::UniformGrid2d:
      for (int k = 0; k < n; ++k) {
        const double a = 2.0 * kPi * k / n;
        out.emplace_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
      }
      break;
    case SampleStrategy::Fibonacci3d: {
      const double golden = kPi * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        out.emplace_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
      }
      break;
    }
    case SampleStrategy::GaussianRandom: {
      std::mt19937_64 rng(plan.seed);
      for (int k = 0; k < n; ++k) out.push_back(gaussian_direction(rng, plan.dim));
      break;
    }
  }
  return out;
}

std::vector<UnitDirection> sample_near(const SamplePlan& plan,
                                       const UnitDirection& center) {
  validate(plan);
  if (!plan.focus) fail(ErrorCode::InvalidArgument, "sample_near needs a cap radius");
  const double radius = plan.focus->cap_radius;
  if (!(radius > 0.0) || radius > kPi) {
    fail(ErrorCode::InvalidArgument, "cap radius must lie in (0, pi]");
  }
  if (center.dim() != plan.dim) fail(ErrorCode::DimensionMismatch, "cap centre dimension");

  const int d = plan.dim;
  const int n = plan.count;
  std::vector<UnitDirection> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(center);
    return out;
  }
  if (d == 1) {
    // S^0 is two points; only the antipode lies at distance pi.
    for (int k = 0; k < n; ++k) {
      const bool flip = radius >= kPi && (k % 2 == 1);
      out.push_back(flip ? UnitDirection(-center.coords()) : center);
    }
    return out;
  }

  const Eigen::MatrixXd frame = frame_for(center);
  auto emit = [&](const Eigen::VectorXd& local) {
    Eigen::VectorXd v = frame * local;
    out.emplace_back(v);
  };

  if (d == 2) {
    const bool full = radius >= kPi;
    for (int k = 0; k < n; ++k) {
      const double t = full ? -kPi + 2.0 * kPi * k / n
                            : -radius + 2.0 * radius * (k + 0.5) / n;
      emit(Eigen::Vector2d(std::sin(t), std::cos(t)));
    }
  } else if (d == 3) {
    // Fibonacci spiral restricted to the polar cap, area-uniform in z.
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    // Work with 1 - z so tiny caps keep their resolution.
    const double half = std::sin(0.5 * radius);
    const double span = 2.0 * half * half;
    for (int k = 0; k < n; ++k) {
      const double drop = span * (k + 0.5) / n;
      const double z = 1.0 - drop;
      const double r = std::sqrt(std::max(0.0, drop * (2.0 - drop)));
      const double phi = golden * k;
      emit(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
    }
  } else {
    std::mt19937_64 rng(plan.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal;
    for (int k = 0; k < n; ++k) {
      // Polar angle with density proportional to sin^{d-2}, by rejection
      // from the flat-cap proposal theta^{d-2}.
      double theta = 0.0;
      for (;;) {
        theta = radius * std::pow(unif(rng), 1.0 / (d - 1));
        const double ratio = theta > 0.0 ? std::sin(theta) / theta : 1.0;
        if (unif(rng) <= std::pow(ratio, d - 2)) break;
      }
      Eigen::VectorXd tangent(d);
      do {
        for (int c = 0; c < d - 1; ++c) tangent[c] = normal(rng);
        tangent[d - 1] = 0.0;
      } while (tangent.norm() < 1e-8);
      tangent.normalize();
      Eigen::VectorXd local = std::sin(theta) * tangent;
      local[d - 1] = std::cos(theta);
      emit(local);
    }
  }
  return out;
}

std::vector<UnitDirection> sample_near_nested(const UnitDirection& center,
                                              double outer, double inner,
                                              int per_cap, std::uint64_t seed) {
  if (!(inner > 0.0) || inner > outer) fail(ErrorCode::InvalidArgument, "nested cap radii");
  const double step = std::sqrt(10.0);
  std::vector<UnitDirection> out;
  SamplePlan plan;
  plan.dim = center.dim();
  plan.strategy = default_strategy(plan.dim);
  plan.count = per_cap;
  for (double r = outer;; r /= step) {
    plan.seed = seed++;
    plan.focus = CapFocus{std::nullopt, r};
    auto cap = sample_near(plan, center);
    out.insert(out.end(), cap.begin(), cap.end());
    if (r <= inner) break;
  }
  return out;
}

double angular_distance(const UnitDirection& a, const UnitDirection& b) {
  const double s = (a.coords() - b.coords()).norm();
  const double c = (a.coords() + b.coords()).norm();
  return 2.0 * std::atan2(s, c);
}

}  // namespace hullmap
