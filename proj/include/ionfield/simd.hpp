#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the scheme. Every kernel has a scalar
// reference implementation; wider variants are compiled separately with the
// matching target flags and chosen once at startup from the CPU's feature
// bits. Element-wise kernels are bitwise identical across variants; the
// reductions (dot, dissipation_sum) only agree to rounding because the
// summation order differs.

namespace ionfield::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelSet {
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// u[f] = -(psi_hi[f] - psi_lo[f]) / spacing
  void (*face_velocity)(const double* psi_lo, const double* psi_hi, std::size_t n,
                        double spacing, double* u);

  /// flux[f] = max(u, 0) * c_lo[f] - max(-u, 0) * c_hi[f]
  void (*upwind_flux)(const double* u, const double* c_lo, const double* c_hi, std::size_t n,
                      double* flux);

  /// out[i] = c[i] - ratio * (flux_hi[i] - flux_lo[i])
  void (*conservative_update)(const double* c, const double* flux_lo, const double* flux_hi,
                              std::size_t n, double ratio, double* out);

  /// sum_f u[f]^2 * min(c_lo[f], c_hi[f])
  double (*dissipation_sum)(const double* u, const double* c_lo, const double* c_hi,
                            std::size_t n);

  /// max_f |u[f]|
  double (*max_abs)(const double* u, std::size_t n);
};

const KernelSet& scalar_kernels() noexcept;

/// True when the variant was compiled in and the CPU supports it.
bool available(Isa isa) noexcept;

/// Kernels for a specific variant; throws std::invalid_argument when the
/// variant is unavailable on this machine.
const KernelSet& kernels_for(Isa isa);

/// The variant in use. Defaults to the widest available.
Isa active_isa() noexcept;
const KernelSet& active() noexcept;

/// Overrides the runtime choice (tests and the CLI's --simd flag).
void select(Isa isa);

/// Parses "scalar", "avx2" or "auto".
Isa parse_isa(std::string_view name);

}  // namespace ionfield::simd
