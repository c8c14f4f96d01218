#pragma once

// Data-parallel kernels behind the frontier engine. Every ISA variant must
// produce bit-identical output to the scalar reference.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fppweb::simd {

enum class Isa { scalar, avx2, neon };

inline constexpr std::uint8_t kUnreached = 255;

struct Kernels {
  Isa isa;
  /// out[k] = outcome index of the draw mix64(row_key + (x0 + k) * kSpaceStride)
  /// against `thresholds` (count of thresholds <= draw).
  void (*sample_indices)(std::uint64_t row_key, std::int64_t x0,
                         const std::uint64_t* thresholds, std::size_t n_thresholds,
                         std::size_t count, std::uint8_t* out);
  /// dst[k] = min(dst[k], saturating(src[k] + add)). dst and src must not alias.
  void (*relax)(std::uint8_t* dst, const std::uint8_t* src, std::size_t count,
                std::uint8_t add);
  /// dst[k] = min(dst[k], choice[k] == index ? src[k] : kUnreached).
  void (*masked_min)(std::uint8_t* dst, const std::uint8_t* src,
                     const std::uint8_t* choice, std::uint8_t index, std::size_t count);
  /// row[k] = row[k] > limit ? kUnreached : row[k].
  void (*clamp)(std::uint8_t* row, std::size_t count, std::uint8_t limit);
};

bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

/// Kernels for a specific ISA; throws std::invalid_argument if unavailable.
const Kernels& kernels_for(Isa isa);

/// Active kernels. Defaults to the best available ISA, overridable with the
/// FPPWEB_ISA environment variable (scalar|avx2|neon) or set_active_isa.
const Kernels& kernels();
void set_active_isa(Isa isa);

namespace detail {
extern const Kernels kScalarKernels;
#if defined(FPPWEB_HAVE_AVX2)
extern const Kernels kAvx2Kernels;
#endif
#if defined(FPPWEB_HAVE_NEON)
extern const Kernels kNeonKernels;
#endif
}  // namespace detail

}  // namespace fppweb::simd
