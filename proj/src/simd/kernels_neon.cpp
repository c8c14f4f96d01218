#include <arm_neon.h>

#include "fppweb/increment.hpp"
#include "fppweb/simd.hpp"

namespace fppweb::simd {
namespace {

void relax_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t count, std::uint8_t add) {
  const uint8x16_t inc = vdupq_n_u8(add);
  std::size_t k = 0;
  for (; k + 16 <= count; k += 16) {
    const uint8x16_t v = vqaddq_u8(vld1q_u8(src + k), inc);
    vst1q_u8(dst + k, vminq_u8(vld1q_u8(dst + k), v));
  }
  for (; k < count; ++k) {
    const unsigned v = static_cast<unsigned>(src[k]) + add;
    const auto sat = static_cast<std::uint8_t>(v > 255u ? 255u : v);
    if (sat < dst[k]) dst[k] = sat;
  }
}

void masked_min_neon(std::uint8_t* dst, const std::uint8_t* src, const std::uint8_t* choice,
                     std::uint8_t index, std::size_t count) {
  const uint8x16_t want = vdupq_n_u8(index);
  const uint8x16_t none = vdupq_n_u8(kUnreached);
  std::size_t k = 0;
  for (; k + 16 <= count; k += 16) {
    const uint8x16_t mask = vceqq_u8(vld1q_u8(choice + k), want);
    const uint8x16_t v = vbslq_u8(mask, vld1q_u8(src + k), none);
    vst1q_u8(dst + k, vminq_u8(vld1q_u8(dst + k), v));
  }
  for (; k < count; ++k) {
    if (choice[k] == index && src[k] < dst[k]) dst[k] = src[k];
  }
}

void clamp_neon(std::uint8_t* row, std::size_t count, std::uint8_t limit) {
  const uint8x16_t lim = vdupq_n_u8(limit);
  std::size_t k = 0;
  for (; k + 16 <= count; k += 16) {
    const uint8x16_t r = vld1q_u8(row + k);
    vst1q_u8(row + k, vorrq_u8(r, vcgtq_u8(r, lim)));
  }
  for (; k < count; ++k) {
    if (row[k] > limit) row[k] = kUnreached;
  }
}

}  // namespace

namespace detail {
// No 64-bit lane multiply on NEON; hashing stays on the scalar path.
const Kernels kNeonKernels{Isa::neon, kScalarKernels.sample_indices, relax_neon, masked_min_neon,
                           clamp_neon};
}  // namespace detail

}  // namespace fppweb::simd
