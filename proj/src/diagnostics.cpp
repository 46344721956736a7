#include "ionfield/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ionfield/errors.hpp"
#include "ionfield/simd.hpp"

namespace ionfield {
namespace {

double dot_compensated(std::span<const double> a, std::span<const double> b) {
  Field products(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) products[j] = a[j] * b[j];
  return compensated_sum(products);
}

// max - min of psi over cells with c > threshold; NaN when there are none.
double support_flatness(std::span<const double> c, std::span<const double> psi,
                        double threshold) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] > threshold) {
      lo = std::min(lo, psi[j]);
      hi = std::max(hi, psi[j]);
    }
  }
  return lo > hi ? std::numeric_limits<double>::quiet_NaN() : hi - lo;
}

}  // namespace

EnergyBreakdown discrete_energy(const State& state, const ModelOperators& model) {
  return discrete_energy(state, model, potential_terms(state, model));
}

EnergyBreakdown discrete_energy(const State& state, const ModelOperators& model,
                                const PotentialTerms& terms) {
  const Grid& grid = state.grid;
  const double w = grid.cell_measure();
  const std::size_t cells = grid.cell_count();
  const ExternalPotential& ext = model.config().external;

  Field entropy(cells, 0.0);
  Field external(cells, 0.0);
  for (const auto& s : state.species) {
    for (std::size_t j = 0; j < cells; ++j) {
      const double c = s.values[j];
      if (c > 0.0) entropy[j] += c * std::log(c);
      double v = ext.confining(grid.center_radius_squared(j));
      if (ext.field != 0.0) v += s.valence * ext.field * grid.center(static_cast<int>(j));
      external[j] += v * c;
    }
  }

  EnergyBreakdown e;
  e.entropy = w * compensated_sum(entropy);
  e.electrostatic = 0.5 * w * dot_compensated(terms.charge, terms.electrostatic);
  e.steric = 0.5 * w * dot_compensated(terms.total, terms.steric);
  e.external = w * compensated_sum(external);
  e.total = e.entropy + e.electrostatic + e.steric + e.external;
  return e;
}

double discrete_dissipation(const State& state, const FaceVelocities& velocities) {
  const Grid& grid = state.grid;
  const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
  if (grid.dim() == 1) {
    const auto& k = simd::active();
    double d = 0.0;
    for (std::size_t m = 0; m < state.species.size(); ++m) {
      const double* c = state.species[m].values.data();
      d += k.dissipation_sum(velocities.x[m].data(), c, c + 1, n - 1);
    }
    return grid.cell_measure() * d;
  }
  double d = 0.0;
  for (std::size_t m = 0; m < state.species.size(); ++m) {
    const Field& c = state.species[m].values;
    const Field& ux = velocities.x[m];
    const Field& uy = velocities.y[m];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        double lo = c[j * n + k];
        double speed2 = 0.0;
        if (j + 1 < n) {
          const double u = ux[j * n + k];
          speed2 += u * u;
          lo = std::min(lo, c[(j + 1) * n + k]);
        }
        if (k + 1 < n) {
          const double v = uy[j * (n - 1) + k];
          speed2 += v * v;
          lo = std::min(lo, c[j * n + k + 1]);
        }
        d += speed2 * lo;
      }
    }
  }
  return grid.cell_measure() * d;
}

double second_moment(const State& state) {
  const Grid& grid = state.grid;
  Field weighted(grid.cell_count(), 0.0);
  for (const auto& s : state.species) {
    for (std::size_t j = 0; j < weighted.size(); ++j) {
      weighted[j] += grid.center_radius_squared(j) * s.values[j];
    }
  }
  return grid.cell_measure() * compensated_sum(weighted);
}

double second_moment_bound_constant(const ModelConfig& model, std::span<const double> masses,
                                    int dimension) {
  const auto* steric = std::get_if<RegularizedPower>(&model.steric);
  if (steric == nullptr) {
    throw ValidationError("kernels.steric",
                          "second-moment bound needs a regularized power steric kernel");
  }
  if (model.correlated) {
    throw ValidationError("correlated", "second-moment bound is undefined for correlated mode");
  }
  if (dimension < 1) throw ValidationError("grid.dim", "dimension must be positive");
  double m0 = 0.0;
  for (double m : masses) m0 += m;
  double zmax = 0.0;
  for (int z : model.valences) zmax = std::max(zmax, std::abs(static_cast<double>(z)));
  const double k_eta = steric->exponent * steric->eta;
  if (dimension <= 2) return 4.0 * m0 + (k_eta + 1.0) * zmax * zmax * m0 * m0;
  const double d = dimension;
  const double a = steric->a;
  return 2.0 * d * m0 +
         (k_eta * std::pow(a, -steric->exponent) + (d - 2.0) * std::pow(a, 2.0 - d) * zmax * zmax) *
             m0 * m0;
}

std::vector<double> maximal_density(const State& state, double radius) {
  if (!(radius > 0.0)) throw ValidationError("radius", "must be positive");
  const Grid& grid = state.grid;
  const int n = grid.cells_per_axis();
  const double h = grid.spacing();
  const double slack = 1e-12 * h;
  // Largest offset (in cells) still inside the ball along one axis.
  const int reach = std::min(n - 1, static_cast<int>(std::floor((radius + slack) / h)));
  std::vector<double> out;
  out.reserve(state.species.size());
  for (const auto& s : state.species) {
    const Field& c = s.values;
    double best = 0.0;
    if (grid.dim() == 1) {
      Field prefix(static_cast<std::size_t>(n) + 1, 0.0);
      for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + c[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const int lo = std::max(0, j - reach);
        const int hi = std::min(n - 1, j + reach);
        best = std::max(best, prefix[hi + 1] - prefix[lo]);
      }
    } else {
      // Per-row prefix sums; each row of the disc is a contiguous run.
      const auto un = static_cast<std::size_t>(n);
      Field prefix(un * (un + 1), 0.0);
      for (std::size_t j = 0; j < un; ++j) {
        for (std::size_t k = 0; k < un; ++k) {
          prefix[j * (un + 1) + k + 1] = prefix[j * (un + 1) + k] + c[j * un + k];
        }
      }
      std::vector<int> half_row(static_cast<std::size_t>(reach) + 1);
      for (int dx = 0; dx <= reach; ++dx) {
        const double rest = (radius + slack) * (radius + slack) - (dx * h) * (dx * h);
        half_row[static_cast<std::size_t>(dx)] =
            rest < 0.0 ? -1 : std::min(n - 1, static_cast<int>(std::floor(std::sqrt(rest) / h)));
      }
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double sum = 0.0;
          for (int dx = -reach; dx <= reach; ++dx) {
            const int row = j + dx;
            if (row < 0 || row >= n) continue;
            const int w = half_row[static_cast<std::size_t>(std::abs(dx))];
            if (w < 0) continue;
            const int lo = std::max(0, k - w);
            const int hi = std::min(n - 1, k + w);
            const std::size_t base = static_cast<std::size_t>(row) * (un + 1);
            sum += prefix[base + static_cast<std::size_t>(hi) + 1] -
                   prefix[base + static_cast<std::size_t>(lo)];
          }
          best = std::max(best, sum);
        }
      }
    }
    out.push_back(grid.cell_measure() * best);
  }
  return out;
}

double maximal_density_scale(double radius, double a, double exponent) {
  return std::pow(4.0 * radius * radius + a * a, 0.25 * exponent);
}

std::vector<double> potential_flatness(const State& state, std::span<const Field> psi,
                                       std::span<const double> thresholds) {
  if (psi.size() != state.species.size() || thresholds.size() != state.species.size()) {
    throw ValidationError("psi", "species count mismatch");
  }
  std::vector<double> out;
  out.reserve(psi.size());
  for (std::size_t m = 0; m < psi.size(); ++m) {
    if (!(thresholds[m] > 0.0)) throw ValidationError("threshold", "must be positive");
    const double f = support_flatness(state.species[m].values, psi[m], thresholds[m]);
    if (std::isnan(f)) {
      throw ValidationError("threshold", "no cell of species " + std::to_string(m) +
                                             " exceeds the flatness threshold");
    }
    out.push_back(f);
  }
  return out;
}

std::vector<double> potential_flatness(const State& state, std::span<const Field> psi,
                                       double threshold) {
  const std::vector<double> t(state.species.size(), threshold);
  return potential_flatness(state, psi, t);
}

DiagnosticsRecord record_diagnostics(const State& state, const ModelOperators& model,
                                     double relative_threshold) {
  const PotentialTerms terms = potential_terms(state, model);
  return record_diagnostics(state, model, terms, chemical_potential(state, model, terms),
                            relative_threshold);
}

DiagnosticsRecord record_diagnostics(const State& state, const ModelOperators& model,
                                     const PotentialTerms& terms, const ChemicalPotential& psi,
                                     double relative_threshold) {
  DiagnosticsRecord r;
  r.time = state.time;
  for (const auto& s : state.species) r.mass.push_back(total_mass(s.values, state.grid));
  r.energy = discrete_energy(state, model, terms);
  r.dissipation = discrete_dissipation(state, face_velocities(psi, state.grid));
  r.second_moment = second_moment(state);

  // An empty species has no support to measure flatness on; report NaN.
  for (std::size_t m = 0; m < state.species.size(); ++m) {
    const Field& c = state.species[m].values;
    const double peak = *std::max_element(c.begin(), c.end());
    r.flatness.push_back(peak > 0.0 ? support_flatness(c, psi.varying[m], relative_threshold * peak)
                                    : std::numeric_limits<double>::quiet_NaN());
  }
  return r;
}

}  // namespace ionfield
