#pragma once

#include <fftw3.h>

#include <cstddef>
#include <span>

#include "ionfield/kernels.hpp"

namespace ionfield {

/// Full linear convolution with a fixed kernel table via zero-padded real
/// FFTs of length 2N per axis. The padding makes the circular product equal
/// the non-periodic direct sum.
///
/// Plans are built once; apply() allocates its own work arrays, so one
/// instance may be shared across threads.
class FftLinearConvolver {
 public:
  explicit FftLinearConvolver(const KernelTable& table);
  ~FftLinearConvolver();
  FftLinearConvolver(const FftLinearConvolver&) = delete;
  FftLinearConvolver& operator=(const FftLinearConvolver&) = delete;

  Field apply(std::span<const double> density) const;

 private:
  int dim_;
  std::size_t cells_;       // per axis
  std::size_t padded_;      // 2 * cells_ per axis
  std::size_t real_size_;   // padded_^dim
  std::size_t spec_size_;   // padded_^(dim-1) * (padded_/2 + 1)
  fftw_complex* kernel_spectrum_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace ionfield
