#include <cstring>

#include "hullmap/error.hpp"
#include "hullmap/kernels.hpp"

namespace hullmap::kernels {

const char* name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(HULLMAP_HAVE_AVX2)
  static const bool has_avx2 = __builtin_cpu_supports("avx2");
  return has_avx2;
#else
  return false;
#endif
}

Isa best_isa() { return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa parse_isa(const char* text) {
  if (std::strcmp(text, "scalar") == 0) return Isa::Scalar;
  if (std::strcmp(text, "avx2") == 0) {
    if (!available(Isa::Avx2)) fail(ErrorCode::InvalidArgument, "avx2 kernels unavailable on this CPU");
    return Isa::Avx2;
  }
  if (std::strcmp(text, "auto") == 0) return best_isa();
  fail(ErrorCode::InvalidArgument, std::string("unknown kernel isa '") + text + "'");
}

void map_images(Isa isa, const MapInput& in, std::span<const double> directions,
                std::span<double> images) {
  if (in.dim > 8) fail(ErrorCode::NumericalOverflow, "map kernel supports dim <= 8");
#if defined(HULLMAP_HAVE_AVX2)
  if (isa == Isa::Avx2 && available(Isa::Avx2)) {
    detail::map_images_avx2(in, directions, images);
    return;
  }
#endif
  (void)isa;
  detail::map_images_scalar(in, directions, images);
}

SoaPoints SoaPoints::from_rows(int dim, std::span<const double> rows) {
  SoaPoints soa;
  soa.dim = dim;
  soa.size = rows.size() / dim;
  soa.data.resize(rows.size());
  for (std::size_t i = 0; i < soa.size; ++i) {
    for (int k = 0; k < dim; ++k) soa.data[k * soa.size + i] = rows[i * dim + k];
  }
  return soa;
}

void nearest_sq(Isa isa, const SoaPoints& targets,
                std::span<const double> queries, std::span<double> out) {
  if (targets.dim > 8) fail(ErrorCode::InvalidArgument, "nearest kernel supports dim <= 8");
#if defined(HULLMAP_HAVE_AVX2)
  if (isa == Isa::Avx2 && available(Isa::Avx2)) {
    detail::nearest_sq_avx2(targets, queries, out);
    return;
  }
#endif
  (void)isa;
  detail::nearest_sq_scalar(targets, queries, out);
}

}  // namespace hullmap::kernels
