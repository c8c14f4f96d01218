#include <algorithm>

#include "fppweb/increment.hpp"
#include "fppweb/simd.hpp"

namespace fppweb::simd {
namespace {

void sample_indices_scalar(std::uint64_t row_key, std::int64_t x0, const std::uint64_t* thresholds,
                           std::size_t n_thresholds, std::size_t count, std::uint8_t* out) {
  std::uint64_t site = row_key + static_cast<std::uint64_t>(x0) * kSpaceStride;
  for (std::size_t k = 0; k < count; ++k, site += kSpaceStride) {
    const std::uint64_t u = mix64(site);
    std::uint8_t idx = 0;
    for (std::size_t h = 0; h < n_thresholds; ++h) idx += (u >= thresholds[h]) ? 1 : 0;
    out[k] = idx;
  }
}

void relax_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t count, std::uint8_t add) {
  for (std::size_t k = 0; k < count; ++k) {
    const unsigned v = std::min(255u, static_cast<unsigned>(src[k]) + add);
    dst[k] = std::min<std::uint8_t>(dst[k], static_cast<std::uint8_t>(v));
  }
}

void masked_min_scalar(std::uint8_t* dst, const std::uint8_t* src, const std::uint8_t* choice,
                       std::uint8_t index, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) {
    if (choice[k] == index) dst[k] = std::min(dst[k], src[k]);
  }
}

void clamp_scalar(std::uint8_t* row, std::size_t count, std::uint8_t limit) {
  for (std::size_t k = 0; k < count; ++k) {
    if (row[k] > limit) row[k] = kUnreached;
  }
}

}  // namespace

namespace detail {
const Kernels kScalarKernels{Isa::scalar, sample_indices_scalar, relax_scalar, masked_min_scalar,
                             clamp_scalar};
}  // namespace detail

}  // namespace fppweb::simd
