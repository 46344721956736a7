#include <cmath>
#include <string>

#include "fft_convolver.hpp"
#include "ionfield/errors.hpp"
#include "ionfield/kernels.hpp"
#include "ionfield/simd.hpp"

namespace ionfield {
namespace {

// Direct summation wins below these sizes; past them the O(N log N) route
// is cheaper by a wide margin.
constexpr int kDirectMaxCells1D = 128;
constexpr int kDirectMaxCells2D = 16;

void check_density(const KernelTable& table, std::span<const double> density) {
  if (density.size() != table.grid().cell_count()) {
    throw ValidationError("density", "density length does not match the kernel table grid");
  }
}

}  // namespace

// Kernels are even, so table[j - i] over i = 0..N-1 is the contiguous run
// table[(i - j) + N - 1], i.e. starting at N - 1 - j. The 2D case applies the
// same trick per axis.
Field convolve(const KernelTable& table, std::span<const double> density) {
  check_density(table, density);
  const Grid& grid = table.grid();
  Field out(density.size(), 0.0);
  if (table.all_zero()) return out;

  const auto& k = simd::active();
  const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
  const double weight = grid.cell_measure();
  const double* t = table.values().data();
  if (grid.dim() == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = weight * k.dot(t + (n - 1 - j), density.data(), n);
    }
    return out;
  }
  const std::size_t stride = table.span_per_axis();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t kk = 0; kk < n; ++kk) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double* row = t + (i + n - 1 - j) * stride + (n - 1 - kk);
        s += k.dot(row, density.data() + i * n, n);
      }
      out[j * n + kk] = weight * s;
    }
  }
  return out;
}

Field double_convolve(const KernelTable& smoothing, const KernelTable& kernel,
                      std::span<const double> density, double correlation_length) {
  if (!(correlation_length > 0.0)) {
    throw ValidationError("correlated.l_c", "correlation length must be positive");
  }
  Field out = convolve(smoothing, convolve(kernel, density));
  const double scale = 1.0 / (correlation_length * correlation_length);
  for (double& v : out) v *= scale;
  return out;
}

std::string_view convolution_method_name(ConvolutionMethod method) noexcept {
  switch (method) {
    case ConvolutionMethod::Auto:
      return "auto";
    case ConvolutionMethod::Direct:
      return "direct";
    case ConvolutionMethod::Fft:
      return "fft";
  }
  return "auto";
}

ConvolutionMethod parse_convolution_method(std::string_view name) {
  if (name == "auto") return ConvolutionMethod::Auto;
  if (name == "direct") return ConvolutionMethod::Direct;
  if (name == "fft") return ConvolutionMethod::Fft;
  throw ValidationError("numerics.convolution",
                        "expected auto, direct or fft, got '" + std::string(name) + "'");
}

Convolver::Convolver(KernelTable table, ConvolutionMethod method)
    : table_(std::move(table)), method_(method) {
  if (method_ == ConvolutionMethod::Auto) {
    const int n = table_.grid().cells_per_axis();
    const bool small = table_.grid().dim() == 1 ? n <= kDirectMaxCells1D : n <= kDirectMaxCells2D;
    method_ = small ? ConvolutionMethod::Direct : ConvolutionMethod::Fft;
  }
  if (method_ == ConvolutionMethod::Fft && !table_.all_zero()) {
    fft_ = std::make_unique<FftLinearConvolver>(table_);
  }
}

Convolver::~Convolver() = default;
Convolver::Convolver(Convolver&&) noexcept = default;
Convolver& Convolver::operator=(Convolver&&) noexcept = default;

Field Convolver::apply(std::span<const double> density) const {
  check_density(table_, density);
  if (table_.all_zero()) return Field(density.size(), 0.0);
  if (fft_) return fft_->apply(density);
  return convolve(table_, density);
}

Field double_convolve(const Convolver& smoothing, const Convolver& kernel,
                      std::span<const double> density, double correlation_length) {
  if (!(correlation_length > 0.0)) {
    throw ValidationError("correlated.l_c", "correlation length must be positive");
  }
  Field out = smoothing.apply(kernel.apply(density));
  const double scale = 1.0 / (correlation_length * correlation_length);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace ionfield
