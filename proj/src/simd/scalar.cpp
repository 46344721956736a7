#include <cmath>

#include "ionfield/simd.hpp"

namespace ionfield::simd {
namespace {

// max(a, 0) written the way maxpd evaluates it, so -0.0 and NaN propagate
// identically in the vector variants.
inline double positive_part(double a) { return a > 0.0 ? a : 0.0; }

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void face_velocity(const double* psi_lo, const double* psi_hi, std::size_t n, double spacing,
                   double* u) {
  for (std::size_t f = 0; f < n; ++f) u[f] = -(psi_hi[f] - psi_lo[f]) / spacing;
}

void upwind_flux(const double* u, const double* c_lo, const double* c_hi, std::size_t n,
                 double* flux) {
  for (std::size_t f = 0; f < n; ++f) {
    flux[f] = positive_part(u[f]) * c_lo[f] - positive_part(-u[f]) * c_hi[f];
  }
}

void conservative_update(const double* c, const double* flux_lo, const double* flux_hi,
                         std::size_t n, double ratio, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i] - ratio * (flux_hi[i] - flux_lo[i]);
}

double dissipation_sum(const double* u, const double* c_lo, const double* c_hi, std::size_t n) {
  double s = 0.0;
  for (std::size_t f = 0; f < n; ++f) {
    const double lo = c_lo[f] < c_hi[f] ? c_lo[f] : c_hi[f];
    s += u[f] * u[f] * lo;
  }
  return s;
}

double max_abs(const double* u, std::size_t n) {
  double m = 0.0;
  for (std::size_t f = 0; f < n; ++f) {
    const double a = std::abs(u[f]);
    m = a > m ? a : m;
  }
  return m;
}

constexpr KernelSet kScalar{dot, face_velocity, upwind_flux, conservative_update,
                            dissipation_sum, max_abs};

}  // namespace

const KernelSet& scalar_kernels() noexcept { return kScalar; }

}  // namespace ionfield::simd
