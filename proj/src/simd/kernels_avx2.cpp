// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "fppweb/increment.hpp"
#include "fppweb/simd.hpp"

namespace fppweb::simd {
namespace {

// Low 64 bits of a 64x64 product per lane, from 32x32->64 pieces.
inline __m256i mul64_lo(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i t1 = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b);
  const __m256i t2 = _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(_mm256_add_epi64(t1, t2), 32));
}

inline __m256i mix64_avx2(__m256i z) {
  const __m256i c1 = _mm256_set1_epi64x(static_cast<long long>(0xbf58476d1ce4e5b9ULL));
  const __m256i c2 = _mm256_set1_epi64x(static_cast<long long>(0x94d049bb133111ebULL));
  z = mul64_lo(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), c1);
  z = mul64_lo(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), c2);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

void sample_indices_avx2(std::uint64_t row_key, std::int64_t x0, const std::uint64_t* thresholds,
                         std::size_t n_thresholds, std::size_t count, std::uint8_t* out) {
  const auto stride = kSpaceStride;
  const std::uint64_t base = row_key + static_cast<std::uint64_t>(x0) * stride;
  const __m256i flip = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  __m256i thr[IncrementSpec::kMaxSupport];
  for (std::size_t h = 0; h < n_thresholds; ++h)
    thr[h] = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<long long>(thresholds[h])), flip);

  __m256i site = _mm256_set_epi64x(static_cast<long long>(base + 3 * stride),
                                   static_cast<long long>(base + 2 * stride),
                                   static_cast<long long>(base + stride),
                                   static_cast<long long>(base));
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * stride));
  std::size_t k = 0;
  alignas(32) std::int64_t lanes[4];
  for (; k + 4 <= count; k += 4) {
    const __m256i u = _mm256_xor_si256(mix64_avx2(site), flip);
    __m256i below = _mm256_setzero_si256();
    for (std::size_t h = 0; h < n_thresholds; ++h)
      below = _mm256_sub_epi64(below, _mm256_cmpgt_epi64(thr[h], u));
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), below);
    for (int l = 0; l < 4; ++l)
      out[k + l] = static_cast<std::uint8_t>(n_thresholds - static_cast<std::size_t>(lanes[l]));
    site = _mm256_add_epi64(site, step);
  }
  std::uint64_t tail = base + k * stride;
  for (; k < count; ++k, tail += stride) {
    const std::uint64_t u = mix64(tail);
    std::uint8_t idx = 0;
    for (std::size_t h = 0; h < n_thresholds; ++h) idx += (u >= thresholds[h]) ? 1 : 0;
    out[k] = idx;
  }
}

void relax_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t count, std::uint8_t add) {
  const __m256i inc = _mm256_set1_epi8(static_cast<char>(add));
  std::size_t k = 0;
  for (; k + 32 <= count; k += 32) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k),
                        _mm256_min_epu8(d, _mm256_adds_epu8(s, inc)));
  }
  for (; k < count; ++k) {
    const unsigned v = static_cast<unsigned>(src[k]) + add;
    const auto sat = static_cast<std::uint8_t>(v > 255u ? 255u : v);
    if (sat < dst[k]) dst[k] = sat;
  }
}

void masked_min_avx2(std::uint8_t* dst, const std::uint8_t* src, const std::uint8_t* choice,
                     std::uint8_t index, std::size_t count) {
  const __m256i want = _mm256_set1_epi8(static_cast<char>(index));
  const __m256i none = _mm256_set1_epi8(static_cast<char>(kUnreached));
  std::size_t k = 0;
  for (; k + 32 <= count; k += 32) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(choice + k));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    const __m256i v = _mm256_blendv_epi8(none, s, _mm256_cmpeq_epi8(c, want));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), _mm256_min_epu8(d, v));
  }
  for (; k < count; ++k) {
    if (choice[k] == index && src[k] < dst[k]) dst[k] = src[k];
  }
}

void clamp_avx2(std::uint8_t* row, std::size_t count, std::uint8_t limit) {
  const __m256i above = _mm256_set1_epi8(static_cast<char>(limit + 1));
  std::size_t k = 0;
  for (; k + 32 <= count; k += 32) {
    const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + k));
    // r >= limit + 1 exactly when max(r, limit + 1) == r.
    const __m256i mask = _mm256_cmpeq_epi8(_mm256_max_epu8(r, above), r);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + k), _mm256_or_si256(r, mask));
  }
  for (; k < count; ++k) {
    if (row[k] > limit) row[k] = kUnreached;
  }
}

}  // namespace

namespace detail {
const Kernels kAvx2Kernels{Isa::avx2, sample_indices_avx2, relax_avx2, masked_min_avx2,
                           clamp_avx2};
}  // namespace detail

}  // namespace fppweb::simd
