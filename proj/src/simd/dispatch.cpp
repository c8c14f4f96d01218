#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fppweb/simd.hpp"

namespace fppweb::simd {
namespace {

bool cpu_has_avx2() {
#if defined(FPPWEB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa best_isa() {
  if (const char* env = std::getenv("FPPWEB_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    if (want == "neon" && isa_available(Isa::neon)) return Isa::neon;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<const Kernels*>& active() {
  static std::atomic<const Kernels*> ptr{&kernels_for(best_isa())};
  return ptr;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
    case Isa::neon:
#if defined(FPPWEB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("ISA not available: " + std::string(isa_name(isa)));
  switch (isa) {
#if defined(FPPWEB_HAVE_AVX2)
    case Isa::avx2:
      return detail::kAvx2Kernels;
#endif
#if defined(FPPWEB_HAVE_NEON)
    case Isa::neon:
      return detail::kNeonKernels;
#endif
    default:
      return detail::kScalarKernels;
  }
}

const Kernels& kernels() { return *active().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { active().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace fppweb::simd
