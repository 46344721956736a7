#include <atomic>
#include <stdexcept>
#include <string>

#include "ionfield/simd.hpp"
#include "kernels_impl.hpp"

namespace ionfield::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(IONFIELD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa widest_available() noexcept { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{widest_available()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelSet& kernels_for(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument("SIMD variant '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  }
#if defined(IONFIELD_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_kernels();
#endif
  return scalar_kernels();
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

const KernelSet& active() noexcept { return kernels_for(active_isa()); }

void select(Isa isa) {
  kernels_for(isa);  // validates
  current().store(isa, std::memory_order_relaxed);
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "auto") return widest_available();
  throw std::invalid_argument("unknown SIMD variant '" + std::string(name) +
                              "' (expected scalar, avx2 or auto)");
}

}  // namespace ionfield::simd
