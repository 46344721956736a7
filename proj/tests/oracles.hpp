#pragma once
// Brute-force reference implementations. Written straight from the
// formulas, long double accumulation, no shared code with the library
// beyond the data types.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "ionfield/grid.hpp"
#include "ionfield/kernels.hpp"
#include "ionfield/model.hpp"

namespace oracle {

using ionfield::Field;

inline double center(double L, int n, int j) { return -L + (j + 0.5) * (2.0 * L / n); }

inline long double kernel(const ionfield::KernelSpec& spec, long double r) {
  using namespace ionfield;
  const long double r2 = r * r;
  if (auto* k = std::get_if<RegularizedNewtonian>(&spec)) {
    if (k->dimension == 2) return -0.5L * std::log(r2 + (long double)k->a * k->a);
    return 1.0L / std::pow(std::sqrt(r2 + (long double)k->a * k->a), (long double)k->dimension - 2);
  }
  if (auto* k = std::get_if<RegularizedPower>(&spec)) {
    return k->eta / std::pow(std::sqrt(r2 + (long double)k->a * k->a), (long double)k->exponent);
  }
  if (auto* k = std::get_if<Log2DCoulomb>(&spec)) {
    return -std::log(std::sqrt(r2 + (long double)k->a * k->a)) / (2.0L * std::numbers::pi_v<long double>);
  }
  if (std::holds_alternative<ExpDecay>(spec)) return std::exp(-std::fabs(r));
  if (auto* k = std::get_if<VanDerWaals>(&spec)) {
    const long double lc = k->correlation_length;
    return std::exp(-std::fabs(r) / lc) * lc / std::sqrt(r2 + (long double)k->a * k->a);
  }
  return 0.0L;
}

// sum_i h^d K(|x_j - x_i|) f_i, distances from coordinates.
inline Field convolve(const ionfield::KernelSpec& spec, const ionfield::Grid& g,
                      const Field& f) {
  const int n = g.cells_per_axis();
  const double L = g.half_width();
  const long double w = std::pow((long double)(2.0 * L / n), (long double)g.dim());
  Field out(f.size());
  if (g.dim() == 1) {
    for (int j = 0; j < n; ++j) {
      long double s = 0;
      for (int i = 0; i < n; ++i) s += kernel(spec, center(L, n, j) - center(L, n, i)) * f[i];
      out[j] = (double)(w * s);
    }
    return out;
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      long double s = 0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          const long double dx = center(L, n, j) - center(L, n, i);
          const long double dy = center(L, n, k) - center(L, n, l);
          s += kernel(spec, std::sqrt(dx * dx + dy * dy)) * f[i * n + l];
        }
      out[j * n + k] = (double)(w * s);
    }
  return out;
}

// (1/l^2) sum_i sum_k h^2 S(x_j - x_i) K(x_i - x_k) f_k, one triple loop (1D).
inline Field double_convolve_1d(const ionfield::KernelSpec& smooth, const ionfield::KernelSpec& k,
                                const ionfield::Grid& g, const Field& f, double lc) {
  const int n = g.cells_per_axis();
  const double L = g.half_width();
  const long double h = 2.0L * L / n;
  Field out(n);
  for (int j = 0; j < n; ++j) {
    long double s = 0;
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m)
        s += kernel(smooth, center(L, n, j) - center(L, n, i)) *
             kernel(k, center(L, n, i) - center(L, n, m)) * f[m];
    out[j] = (double)(h * h * s / ((long double)lc * lc));
  }
  return out;
}

struct Potentials {
  Field rho, theta, phi, wtheta;
};

inline Potentials potentials(const ionfield::State& s, const ionfield::ModelConfig& cfg) {
  const auto& g = s.grid;
  Potentials p;
  p.rho.assign(g.cell_count(), 0.0);
  p.theta.assign(g.cell_count(), 0.0);
  for (std::size_t j = 0; j < g.cell_count(); ++j) {
    long double r = 0, t = 0;
    for (const auto& sp : s.species) {
      r += (long double)sp.valence * sp.values[j];
      t += sp.values[j];
    }
    p.rho[j] = (double)r;
    p.theta[j] = (double)t;
  }
  if (cfg.correlated) {
    p.phi = double_convolve_1d(cfg.correlated->smoothing_kernel(), cfg.electrostatic, g, p.rho,
                               cfg.correlated->correlation_length);
  } else {
    p.phi = convolve(cfg.electrostatic, g, p.rho);
  }
  p.wtheta = convolve(cfg.steric, g, p.theta);
  return p;
}

inline double radius2(const ionfield::Grid& g, std::size_t cell) {
  const int n = g.cells_per_axis();
  const double L = g.half_width();
  if (g.dim() == 1) return std::pow(center(L, n, (int)cell), 2);
  return std::pow(center(L, n, (int)cell / n), 2) + std::pow(center(L, n, (int)cell % n), 2);
}

inline std::vector<Field> psi(const ionfield::State& s, const ionfield::ModelConfig& cfg) {
  const auto p = potentials(s, cfg);
  std::vector<Field> out;
  const int n = s.grid.cells_per_axis();
  for (const auto& sp : s.species) {
    Field v(sp.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      long double t = std::log(std::max(sp.values[j], cfg.log_floor)) + 1.0L;
      t += (long double)sp.valence * p.phi[j] + p.wtheta[j];
      t += 0.5L * cfg.external.quadratic * radius2(s.grid, j) + cfg.external.offset;
      if (s.grid.dim() == 1) {
        t += (long double)sp.valence * cfg.external.field *
             center(s.grid.half_width(), n, (int)j);
      }
      v[j] = (double)t;
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline double energy(const ionfield::State& s, const ionfield::ModelConfig& cfg) {
  const auto& g = s.grid;
  const int n = g.cells_per_axis();
  const double L = g.half_width();
  const long double w = std::pow((long double)(2.0 * L / n), (long double)g.dim());
  const auto p = potentials(s, cfg);
  long double e = 0;
  for (const auto& sp : s.species)
    for (std::size_t j = 0; j < sp.values.size(); ++j) {
      const long double c = sp.values[j];
      if (c > 0) e += w * c * std::log(c);
      long double v = 0.5L * cfg.external.quadratic * radius2(g, j) + cfg.external.offset;
      if (g.dim() == 1) v += (long double)sp.valence * cfg.external.field * center(L, n, (int)j);
      e += w * v * c;
    }
  for (std::size_t j = 0; j < g.cell_count(); ++j) {
    e += 0.5L * w * ((long double)p.rho[j] * p.phi[j] + (long double)p.theta[j] * p.wtheta[j]);
  }
  return (double)e;
}

// Same inputs as the library routine (state plus face velocities). 1D: sum
// over faces; 2D: per cell, upper x and y faces sharing the three-cell
// minimum.
inline double dissipation(const ionfield::State& s, const std::vector<Field>& ux,
                          const std::vector<Field>& uy) {
  const auto& g = s.grid;
  const int n = g.cells_per_axis();
  const long double h = 2.0L * g.half_width() / n;
  long double d = 0;
  for (std::size_t m = 0; m < s.species.size(); ++m) {
    const Field& c = s.species[m].values;
    if (g.dim() == 1) {
      for (int j = 0; j + 1 < n; ++j) {
        const long double u = ux[m][j];
        d += h * u * u * std::min(c[j], c[j + 1]);
      }
      continue;
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        long double lo = c[j * n + k], sp = 0;
        if (j + 1 < n) {
          const long double u = ux[m][j * n + k];
          sp += u * u;
          lo = std::min<long double>(lo, c[(j + 1) * n + k]);
        }
        if (k + 1 < n) {
          const long double v = uy[m][j * (n - 1) + k];
          sp += v * v;
          lo = std::min<long double>(lo, c[j * n + k + 1]);
        }
        d += h * h * sp * lo;
      }
  }
  return (double)d;
}

// -(psi_hi - psi_lo) / h on every interior face, same layout as the library.
inline void velocities(const ionfield::Grid& g, const std::vector<Field>& psi,
                       std::vector<Field>& ux, std::vector<Field>& uy) {
  const int n = g.cells_per_axis();
  const long double h = 2.0L * g.half_width() / n;
  ux.clear();
  uy.clear();
  for (const Field& p : psi) {
    if (g.dim() == 1) {
      Field u(n - 1);
      for (int j = 0; j + 1 < n; ++j) u[j] = (double)(-((long double)p[j + 1] - p[j]) / h);
      ux.push_back(u);
      continue;
    }
    Field u((n - 1) * n), v(n * (n - 1));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (j + 1 < n) u[j * n + k] = (double)(-((long double)p[(j + 1) * n + k] - p[j * n + k]) / h);
        if (k + 1 < n) v[j * (n - 1) + k] = (double)(-((long double)p[j * n + k + 1] - p[j * n + k]) / h);
      }
    ux.push_back(u);
    uy.push_back(v);
  }
}

inline double rel_err(const Field& a, const Field& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den == 0 ? num : num / den;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace oracle
