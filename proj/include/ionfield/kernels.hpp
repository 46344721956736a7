#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "ionfield/grid.hpp"

namespace ionfield {

// Radial interaction kernels. Every variant is regularized, so it is finite
// at zero separation.

/// -(1/2) log(r^2 + a^2) for d = 2, (r^2 + a^2)^(-(d-2)/2) for d > 2.
struct RegularizedNewtonian {
  int dimension = 3;
  double a = 0.5;
};

/// eta (r^2 + a^2)^(-k/2).
struct RegularizedPower {
  double eta = 1.0;
  double exponent = 2.0;
  double a = 0.5;
};

/// Two-dimensional Coulomb potential -(1/2pi) log sqrt(r^2 + a^2).
struct Log2DCoulomb {
  double a = 0.1;
};

/// exp(-r).
struct ExpDecay {};

/// exp(-r / l_c) / (sqrt(r^2 + a^2) / l_c). Only the denominator is regularized.
struct VanDerWaals {
  double correlation_length = 1.0;
  double a = 0.1;
};

struct ZeroKernel {};

using KernelSpec =
    std::variant<RegularizedNewtonian, RegularizedPower, Log2DCoulomb, ExpDecay, VanDerWaals,
                 ZeroKernel>;

/// Throws ValidationError naming `field` when a parameter is out of range.
void validate_kernel(const KernelSpec& spec, std::string_view field);

/// True for kernels that vanish identically.
bool is_identically_zero(const KernelSpec& spec) noexcept;

/// Short machine name of the variant, as used in scenario files.
std::string_view kernel_type_name(const KernelSpec& spec) noexcept;

double eval_kernel(const KernelSpec& spec, double distance);

/// Kernel values at every center-to-center offset of a grid, indexed by the
/// signed offset in cells: -(N-1)..(N-1) per axis. Immutable once built.
class KernelTable {
 public:
  static KernelTable build(const KernelSpec& spec, const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  const KernelSpec& spec() const noexcept { return spec_; }

  /// Number of offsets per axis, 2N - 1.
  std::size_t span_per_axis() const noexcept { return span_; }

  double at(int offset) const noexcept {
    return values_[static_cast<std::size_t>(offset + origin())];
  }
  double at(int offset_x, int offset_y) const noexcept {
    return values_[static_cast<std::size_t>(offset_x + origin()) * span_ +
                   static_cast<std::size_t>(offset_y + origin())];
  }

  /// Row-major storage; the zero offset sits at index N - 1 per axis.
  std::span<const double> values() const noexcept { return values_; }

  bool all_zero() const noexcept { return all_zero_; }

 private:
  int origin() const noexcept { return grid_.cells_per_axis() - 1; }

  KernelSpec spec_;
  Grid grid_;
  std::size_t span_ = 0;
  Field values_;
  bool all_zero_ = true;
};

KernelTable build_table(const KernelSpec& spec, const Grid& grid);

/// out_j = cell_measure * sum_i table[j - i] * density_i, by direct
/// summation (the reference route).
Field convolve(const KernelTable& table, std::span<const double> density);

/// (1 / l_c^2) * convolve(smoothing, convolve(kernel, density)).
Field double_convolve(const KernelTable& smoothing, const KernelTable& kernel,
                      std::span<const double> density, double correlation_length);

enum class ConvolutionMethod { Auto, Direct, Fft };

std::string_view convolution_method_name(ConvolutionMethod method) noexcept;
ConvolutionMethod parse_convolution_method(std::string_view name);

class FftLinearConvolver;

/// A kernel table bound to an evaluation strategy. Direct summation and the
/// zero-padded FFT produce the same full linear (non-circular) convolution.
/// Auto picks direct summation on small grids.
class Convolver {
 public:
  Convolver(KernelTable table, ConvolutionMethod method = ConvolutionMethod::Auto);
  ~Convolver();
  Convolver(Convolver&&) noexcept;
  Convolver& operator=(Convolver&&) noexcept;
  Convolver(const Convolver&) = delete;
  Convolver& operator=(const Convolver&) = delete;

  const KernelTable& table() const noexcept { return table_; }

  /// Resolved method (never Auto).
  ConvolutionMethod method() const noexcept { return method_; }

  Field apply(std::span<const double> density) const;

 private:
  KernelTable table_;
  ConvolutionMethod method_;
  std::unique_ptr<FftLinearConvolver> fft_;
};

Field double_convolve(const Convolver& smoothing, const Convolver& kernel,
                      std::span<const double> density, double correlation_length);

}  // namespace ionfield
