#include "fft_convolver.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <new>
#include <stdexcept>

namespace ionfield {
namespace {

// The FFTW planner is not re-entrant; only plan creation and destruction
// need serialising, execution with new arrays is thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_array(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (p == nullptr) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

// Position of signed offset `o` in a circular buffer of length `padded`.
std::size_t wrap(int o, std::size_t padded) {
  return o >= 0 ? static_cast<std::size_t>(o) : padded - static_cast<std::size_t>(-o);
}

}  // namespace

FftLinearConvolver::FftLinearConvolver(const KernelTable& table)
    : dim_(table.grid().dim()),
      cells_(static_cast<std::size_t>(table.grid().cells_per_axis())),
      padded_(2 * cells_) {
  const int n = static_cast<int>(cells_);
  const int p = static_cast<int>(padded_);
  real_size_ = dim_ == 1 ? padded_ : padded_ * padded_;
  spec_size_ = dim_ == 1 ? padded_ / 2 + 1 : padded_ * (padded_ / 2 + 1);

  auto real = fftw_array<double>(real_size_);
  auto spectrum = fftw_array<fftw_complex>(spec_size_);
  std::fill(real.get(), real.get() + real_size_, 0.0);

  {
    std::lock_guard lock(planner_mutex());
    if (dim_ == 1) {
      forward_ = fftw_plan_dft_r2c_1d(p, real.get(), spectrum.get(), FFTW_ESTIMATE);
      inverse_ = fftw_plan_dft_c2r_1d(p, spectrum.get(), real.get(), FFTW_ESTIMATE);
    } else {
      forward_ = fftw_plan_dft_r2c_2d(p, p, real.get(), spectrum.get(), FFTW_ESTIMATE);
      inverse_ = fftw_plan_dft_c2r_2d(p, p, spectrum.get(), real.get(), FFTW_ESTIMATE);
    }
  }
  if (forward_ == nullptr || inverse_ == nullptr) throw std::runtime_error("FFTW planning failed");

  if (dim_ == 1) {
    for (int o = -(n - 1); o <= n - 1; ++o) real[wrap(o, padded_)] = table.at(o);
  } else {
    for (int ox = -(n - 1); ox <= n - 1; ++ox) {
      const std::size_t row = wrap(ox, padded_) * padded_;
      for (int oy = -(n - 1); oy <= n - 1; ++oy) real[row + wrap(oy, padded_)] = table.at(ox, oy);
    }
  }
  fftw_execute_dft_r2c(forward_, real.get(), spectrum.get());

  // Fold the quadrature weight and the unnormalised inverse into the kernel.
  const double scale = table.grid().cell_measure() / static_cast<double>(real_size_);
  kernel_spectrum_ = spectrum.release();
  for (std::size_t i = 0; i < spec_size_; ++i) {
    kernel_spectrum_[i][0] *= scale;
    kernel_spectrum_[i][1] *= scale;
  }
}

FftLinearConvolver::~FftLinearConvolver() {
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(forward_);
  if (inverse_ != nullptr) fftw_destroy_plan(inverse_);
  fftw_free(kernel_spectrum_);
}

Field FftLinearConvolver::apply(std::span<const double> density) const {
  auto real = fftw_array<double>(real_size_);
  auto spectrum = fftw_array<fftw_complex>(spec_size_);
  std::fill(real.get(), real.get() + real_size_, 0.0);
  if (dim_ == 1) {
    std::copy(density.begin(), density.end(), real.get());
  } else {
    for (std::size_t j = 0; j < cells_; ++j) {
      std::copy_n(density.begin() + static_cast<std::ptrdiff_t>(j * cells_), cells_,
                  real.get() + j * padded_);
    }
  }
  fftw_execute_dft_r2c(forward_, real.get(), spectrum.get());
  for (std::size_t i = 0; i < spec_size_; ++i) {
    const double re = spectrum[i][0];
    const double im = spectrum[i][1];
    const double kr = kernel_spectrum_[i][0];
    const double ki = kernel_spectrum_[i][1];
    spectrum[i][0] = re * kr - im * ki;
    spectrum[i][1] = re * ki + im * kr;
  }
  fftw_execute_dft_c2r(inverse_, spectrum.get(), real.get());

  Field out(density.size());
  if (dim_ == 1) {
    std::copy_n(real.get(), cells_, out.begin());
  } else {
    for (std::size_t j = 0; j < cells_; ++j) {
      std::copy_n(real.get() + j * padded_, cells_,
                  out.begin() + static_cast<std::ptrdiff_t>(j * cells_));
    }
  }
  return out;
}

}  // namespace ionfield
