// Compiled with -mavx2. Mirrors scalar.cpp operation for operation, four
// directions (or four targets) per vector.

#include <immintrin.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "hullmap/kernels.hpp"

namespace hullmap::kernels::detail {
namespace {

inline __m256d renormalize(__m256d m, __m256d& e) {
  const __m256i bits = _mm256_castpd_si256(m);
  const __m256i biased =
      _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7FF));
  // Small nonnegative int64 -> double through the 2^52 bias trick.
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);
  const __m256d as_double = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(magic))),
      magic);
  e = _mm256_add_pd(e, _mm256_sub_pd(as_double, _mm256_set1_pd(1023.0)));
  const __m256i mant = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)),
      _mm256_set1_epi64x(0x3FF0000000000000ll));
  return _mm256_castsi256_pd(mant);
}

inline __m256d pow2(__m256d k) {
  const __m256d biased = _mm256_max_pd(_mm256_add_pd(k, _mm256_set1_pd(1023.0)),
                                       _mm256_setzero_pd());
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);
  const __m256i as_int = _mm256_and_si256(
      _mm256_castpd_si256(_mm256_add_pd(biased, magic)),
      _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll));
  return _mm256_castsi256_pd(_mm256_slli_epi64(as_int, 52));
}

}  // namespace

void map_images_avx2(const MapInput& in, std::span<const double> directions,
                     std::span<double> images) {
  const int n = in.count;
  const int d = in.dim;
  const std::size_t m = directions.size() / d;
  const std::size_t full = m - m % 4;

  std::vector<double> mant(4 * static_cast<std::size_t>(n));
  std::vector<double> expo(4 * static_cast<std::size_t>(n));
  __m256d dir[8];
  const __m256d zero = _mm256_setzero_pd();
  const __m256d eps = _mm256_set1_pd(in.epsilon);

  for (std::size_t r = 0; r < full; r += 4) {
    const double* p = directions.data() + r * d;
    for (int k = 0; k < d; ++k) {
      dir[k] = _mm256_set_pd(p[3 * d + k], p[2 * d + k], p[d + k], p[k]);
    }
    __m256d emax = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
      __m256d mi = _mm256_set1_pd(1.0);
      __m256d ei = zero;
      const double* row = in.pair_dirs + static_cast<std::size_t>(i) * n * d;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double* a = row + static_cast<std::size_t>(j) * d;
        __m256d dot = _mm256_mul_pd(dir[0], _mm256_set1_pd(a[0]));
        for (int k = 1; k < d; ++k) {
          dot = _mm256_add_pd(dot, _mm256_mul_pd(dir[k], _mm256_set1_pd(a[k])));
        }
        const __m256d neg = _mm256_sub_pd(zero, dot);
        const __m256d c = _mm256_add_pd(eps, _mm256_max_pd(neg, zero));
        mi = renormalize(_mm256_mul_pd(mi, c), ei);
      }
      _mm256_storeu_pd(mant.data() + 4 * i, mi);
      _mm256_storeu_pd(expo.data() + 4 * i, ei);
      emax = _mm256_max_pd(ei, emax);
    }
    __m256d total = zero;
    for (int i = 0; i < n; ++i) {
      const __m256d w = _mm256_mul_pd(_mm256_loadu_pd(mant.data() + 4 * i),
                                      pow2(_mm256_sub_pd(_mm256_loadu_pd(expo.data() + 4 * i), emax)));
      _mm256_storeu_pd(mant.data() + 4 * i, w);
      total = _mm256_add_pd(total, w);
    }
    __m256d acc[8];
    for (int k = 0; k < d; ++k) acc[k] = zero;
    for (int i = 0; i < n; ++i) {
      const __m256d lam = _mm256_div_pd(_mm256_loadu_pd(mant.data() + 4 * i), total);
      for (int k = 0; k < d; ++k) {
        acc[k] = _mm256_add_pd(acc[k], _mm256_mul_pd(lam, _mm256_set1_pd(in.coords[i * d + k])));
      }
    }
    alignas(32) double lanes[4];
    for (int k = 0; k < d; ++k) {
      _mm256_store_pd(lanes, acc[k]);
      for (int l = 0; l < 4; ++l) images[(r + l) * d + k] = lanes[l];
    }
  }
  if (full < m) {
    map_images_scalar(in, directions.subspan(full * d), images.subspan(full * d));
  }
}

void nearest_sq_avx2(const SoaPoints& targets, std::span<const double> queries,
                     std::span<double> out) {
  const int d = targets.dim;
  const std::size_t m = queries.size() / d;
  const std::size_t full = targets.size - targets.size % 4;
  for (std::size_t q = 0; q < m; ++q) {
    const double* qp = queries.data() + q * d;
    __m256d qv[8];
    for (int k = 0; k < d; ++k) qv[k] = _mm256_set1_pd(qp[k]);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t t = 0; t < full; t += 4) {
      __m256d s = _mm256_setzero_pd();
      for (int k = 0; k < d; ++k) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(targets.coord(k) + t), qv[k]);
        s = _mm256_add_pd(s, _mm256_mul_pd(diff, diff));
      }
      best = _mm256_min_pd(s, best);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double b = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    for (std::size_t t = full; t < targets.size; ++t) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = targets.coord(k)[t] - qp[k];
        s = s + diff * diff;
      }
      b = std::min(b, s);
    }
    out[q] = b;
  }
}

}  // namespace hullmap::kernels::detail
