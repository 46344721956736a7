#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace ionfield::simd::detail {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double s = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void face_velocity(const double* psi_lo, const double* psi_hi, std::size_t n, double spacing,
                   double* u) {
  const __m256d h = _mm256_set1_pd(spacing);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t f = 0;
  for (; f + 4 <= n; f += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(psi_hi + f), _mm256_loadu_pd(psi_lo + f));
    _mm256_storeu_pd(u + f, _mm256_xor_pd(_mm256_div_pd(d, h), sign));
  }
  for (; f < n; ++f) u[f] = -(psi_hi[f] - psi_lo[f]) / spacing;
}

void upwind_flux(const double* u, const double* c_lo, const double* c_hi, std::size_t n,
                 double* flux) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t f = 0;
  for (; f + 4 <= n; f += 4) {
    const __m256d v = _mm256_loadu_pd(u + f);
    const __m256d plus = _mm256_max_pd(v, zero);
    const __m256d minus = _mm256_max_pd(_mm256_xor_pd(v, sign), zero);
    const __m256d out = _mm256_sub_pd(_mm256_mul_pd(plus, _mm256_loadu_pd(c_lo + f)),
                                      _mm256_mul_pd(minus, _mm256_loadu_pd(c_hi + f)));
    _mm256_storeu_pd(flux + f, out);
  }
  for (; f < n; ++f) {
    const double plus = u[f] > 0.0 ? u[f] : 0.0;
    const double minus = -u[f] > 0.0 ? -u[f] : 0.0;
    flux[f] = plus * c_lo[f] - minus * c_hi[f];
  }
}

void conservative_update(const double* c, const double* flux_lo, const double* flux_hi,
                         std::size_t n, double ratio, double* out) {
  const __m256d r = _mm256_set1_pd(ratio);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(flux_hi + i), _mm256_loadu_pd(flux_lo + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(c + i), _mm256_mul_pd(r, d)));
  }
  for (; i < n; ++i) out[i] = c[i] - ratio * (flux_hi[i] - flux_lo[i]);
}

double dissipation_sum(const double* u, const double* c_lo, const double* c_hi, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t f = 0;
  for (; f + 4 <= n; f += 4) {
    const __m256d v = _mm256_loadu_pd(u + f);
    const __m256d lo = _mm256_min_pd(_mm256_loadu_pd(c_lo + f), _mm256_loadu_pd(c_hi + f));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(v, v), lo));
  }
  double s = horizontal_sum(acc);
  for (; f < n; ++f) {
    const double lo = c_lo[f] < c_hi[f] ? c_lo[f] : c_hi[f];
    s += u[f] * u[f] * lo;
  }
  return s;
}

double max_abs(const double* u, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t f = 0;
  for (; f + 4 <= n; f += 4) {
    acc = _mm256_max_pd(_mm256_andnot_pd(sign, _mm256_loadu_pd(u + f)), acc);
  }
  double m = horizontal_max(acc);
  for (; f < n; ++f) {
    const double a = std::abs(u[f]);
    m = a > m ? a : m;
  }
  return m;
}

constexpr KernelSet kAvx2{dot, face_velocity, upwind_flux, conservative_update, dissipation_sum,
                          max_abs};

}  // namespace

const KernelSet& avx2_kernels() noexcept { return kAvx2; }

}  // namespace ionfield::simd::detail
