#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and an AVX2
// variant that performs the same IEEE operations in the same order, so the
// two produce bitwise-identical results. Selection happens at runtime.

#include <cstddef>
#include <span>
#include <vector>

namespace hullmap::kernels {

enum class Isa { Scalar, Avx2 };

const char* name(Isa isa);
/// Compiled in and supported by the running CPU.
bool available(Isa isa);
Isa best_isa();
/// Parses "scalar", "avx2" or "auto".
Isa parse_isa(const char* text);

/// Read-only view of a point configuration for the map kernel.
struct MapInput {
  int dim = 0;
  int count = 0;
  const double* coords = nullptr;     // count x dim
  const double* pair_dirs = nullptr;  // count x count x dim
  double epsilon = 0.0;
};

/// c_i(eps, n) = mantissa_i * 2^exponent_i with mantissa in [1, 2), for one
/// direction. Exponents are integer-valued doubles.
void product_factors(const MapInput& in, const double* direction,
                     double* mantissa, double* exponent);

/// lambda_i from the split factors: scaled by the largest exponent, summed in
/// index order and divided by the sum.
void normalize_factors(int count, const double* mantissa,
                       const double* exponent, double* lambdas);

/// f_eps for each row of `directions` (m x dim) into `images` (m x dim).
void map_images(Isa isa, const MapInput& in, std::span<const double> directions,
                std::span<double> images);

namespace detail {
void map_images_scalar(const MapInput& in, std::span<const double> directions,
                       std::span<double> images);
void map_images_avx2(const MapInput& in, std::span<const double> directions,
                     std::span<double> images);
}  // namespace detail

/// Points stored coordinate-major (dim blocks of `size` values).
struct SoaPoints {
  int dim = 0;
  std::size_t size = 0;
  std::vector<double> data;

  static SoaPoints from_rows(int dim, std::span<const double> rows);
  const double* coord(int k) const { return data.data() + k * size; }
};

/// For each query row (m x dim), the squared distance to the closest target.
void nearest_sq(Isa isa, const SoaPoints& targets,
                std::span<const double> queries, std::span<double> out);

namespace detail {
void nearest_sq_scalar(const SoaPoints& targets,
                       std::span<const double> queries, std::span<double> out);
void nearest_sq_avx2(const SoaPoints& targets,
                     std::span<const double> queries, std::span<double> out);
}  // namespace detail

}  // namespace hullmap::kernels
