#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "hullmap/kernels.hpp"

namespace hullmap::kernels {
namespace {

constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFull;
constexpr std::uint64_t kExponentOne = 0x3FF0000000000000ull;

// Moves the binary exponent of m into e; m ends in [1, 2). Exact.
inline void renormalize(double& m, double& e) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(m);
  const std::uint64_t biased = (bits >> 52) & 0x7FF;
  m = std::bit_cast<double>((bits & kMantissaMask) | kExponentOne);
  e = e + (static_cast<double>(biased) - 1023.0);
}

// 2^k for integer-valued k <= 0; zero below the normal range.
inline double pow2(double k) {
  const double biased = k + 1023.0;
  if (!(biased >= 1.0)) return 0.0;
  return std::bit_cast<double>(static_cast<std::uint64_t>(biased) << 52);
}

}  // namespace

void product_factors(const MapInput& in, const double* direction,
                     double* mantissa, double* exponent) {
  const int n = in.count;
  const int d = in.dim;
  for (int i = 0; i < n; ++i) {
    double m = 1.0;
    double e = 0.0;
    const double* row = in.pair_dirs + static_cast<std::size_t>(i) * n * d;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* a = row + static_cast<std::size_t>(j) * d;
      double dot = direction[0] * a[0];
      for (int k = 1; k < d; ++k) dot = dot + direction[k] * a[k];
      const double c = in.epsilon + std::max(0.0, -dot);
      m = m * c;
      renormalize(m, e);
    }
    mantissa[i] = m;
    exponent[i] = e;
  }
}

void normalize_factors(int count, const double* mantissa,
                       const double* exponent, double* lambdas) {
  double emax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) emax = std::max(emax, exponent[i]);
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    lambdas[i] = mantissa[i] * pow2(exponent[i] - emax);
    total = total + lambdas[i];
  }
  for (int i = 0; i < count; ++i) lambdas[i] = lambdas[i] / total;
}

namespace detail {

void map_images_scalar(const MapInput& in, std::span<const double> directions,
                       std::span<double> images) {
  const int n = in.count;
  const int d = in.dim;
  const std::size_t m = directions.size() / d;
  std::vector<double> mant(n), expo(n), lam(n);
  for (std::size_t r = 0; r < m; ++r) {
    product_factors(in, directions.data() + r * d, mant.data(), expo.data());
    normalize_factors(n, mant.data(), expo.data(), lam.data());
    double* out = images.data() + r * d;
    for (int k = 0; k < d; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc = acc + lam[i] * in.coords[i * d + k];
      out[k] = acc;
    }
  }
}

void nearest_sq_scalar(const SoaPoints& targets,
                       std::span<const double> queries, std::span<double> out) {
  const int d = targets.dim;
  const std::size_t m = queries.size() / d;
  for (std::size_t q = 0; q < m; ++q) {
    const double* qp = queries.data() + q * d;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < targets.size; ++t) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = targets.coord(k)[t] - qp[k];
        s = s + diff * diff;
      }
      best = std::min(best, s);
    }
    out[q] = best;
  }
}

}  // namespace detail
}  // namespace hullmap::kernels
