#include "ionfield/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionfield/errors.hpp"
#include "ionfield/simd.hpp"

namespace ionfield {

void validate_boundary(const BoundaryCondition& bc, const Grid& grid, std::size_t species_count) {
  const auto* influx = std::get_if<LeftInflux>(&bc);
  if (influx == nullptr) return;
  if (grid.dim() != 1) throw ValidationError("boundary.type", "left influx is only defined in 1D");
  if (influx->species >= species_count) {
    throw ValidationError("boundary.species", "species index out of range");
  }
  const auto& p = influx->profile;
  if (!(p.amplitude >= 0.0) || !std::isfinite(p.amplitude)) {
    throw ValidationError("boundary.amplitude", "must be non-negative and finite");
  }
  if (!std::isfinite(p.center)) throw ValidationError("boundary.center", "must be finite");
  if (!(p.width > 0.0) || !std::isfinite(p.width)) {
    throw ValidationError("boundary.width", "must be positive and finite");
  }
}

FaceVelocities face_velocities(std::span<const Field> psi, const Grid& grid) {
  const auto& k = simd::active();
  const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
  const double h = grid.spacing();
  FaceVelocities out;
  out.x.resize(psi.size());
  if (grid.dim() == 1) {
    for (std::size_t m = 0; m < psi.size(); ++m) {
      out.x[m].resize(n - 1);
      k.face_velocity(psi[m].data(), psi[m].data() + 1, n - 1, h, out.x[m].data());
    }
    return out;
  }
  out.y.resize(psi.size());
  for (std::size_t m = 0; m < psi.size(); ++m) {
    const double* p = psi[m].data();
    out.x[m].resize((n - 1) * n);
    k.face_velocity(p, p + n, (n - 1) * n, h, out.x[m].data());
    out.y[m].resize(n * (n - 1));
    for (std::size_t j = 0; j < n; ++j) {
      k.face_velocity(p + j * n, p + j * n + 1, n - 1, h, out.y[m].data() + j * (n - 1));
    }
  }
  return out;
}

FaceVelocities face_velocities(const ChemicalPotential& psi, const Grid& grid) {
  return face_velocities(std::span<const Field>(psi.varying), grid);
}

FaceFluxes fluxes(const State& state, const FaceVelocities& velocities,
                  const BoundaryCondition& bc, double t) {
  const auto& k = simd::active();
  const Grid& grid = state.grid;
  const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
  const std::size_t species = state.species.size();
  FaceFluxes out;
  out.x.resize(species);
  if (grid.dim() == 1) {
    for (std::size_t m = 0; m < species; ++m) {
      const double* c = state.species[m].values.data();
      Field& f = out.x[m];
      f.assign(n + 1, 0.0);
      k.upwind_flux(velocities.x[m].data(), c, c + 1, n - 1, f.data() + 1);
    }
    if (const auto* influx = std::get_if<LeftInflux>(&bc)) {
      out.x[influx->species][0] = influx->profile(t);
    }
    return out;
  }
  out.y.resize(species);
  for (std::size_t m = 0; m < species; ++m) {
    const double* c = state.species[m].values.data();
    Field& fx = out.x[m];
    fx.assign((n + 1) * n, 0.0);
    k.upwind_flux(velocities.x[m].data(), c, c + n, (n - 1) * n, fx.data() + n);
    Field& fy = out.y[m];
    fy.assign(n * (n + 1), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      k.upwind_flux(velocities.y[m].data() + j * (n - 1), c + j * n, c + j * n + 1, n - 1,
                    fy.data() + j * (n + 1) + 1);
    }
  }
  return out;
}

VelocityBounds max_speeds(const FaceVelocities& velocities) {
  const auto& k = simd::active();
  VelocityBounds b;
  for (const auto& u : velocities.x) b.u_max = std::max(b.u_max, k.max_abs(u.data(), u.size()));
  for (const auto& v : velocities.y) b.v_max = std::max(b.v_max, k.max_abs(v.data(), v.size()));
  return b;
}

double cfl_dt(VelocityBounds bounds, const Grid& grid, const StepOptions& options) {
  const double h = grid.spacing();
  if (grid.dim() == 1) {
    if (bounds.u_max == 0.0) return options.dt_cap;
    return options.safety * h / (2.0 * bounds.u_max);
  }
  double dt = std::numeric_limits<double>::infinity();
  if (bounds.u_max > 0.0) dt = std::min(dt, h / (4.0 * bounds.u_max));
  if (bounds.v_max > 0.0) dt = std::min(dt, h / (4.0 * bounds.v_max));
  if (!std::isfinite(dt)) return options.dt_cap;
  return options.safety * dt;
}

double cfl_dt(const FaceVelocities& velocities, const Grid& grid, const StepOptions& options) {
  return cfl_dt(max_speeds(velocities), grid, options);
}

std::size_t apply_fluxes(State& state, const FaceFluxes& flux, double dt) {
  const auto& k = simd::active();
  const Grid& grid = state.grid;
  const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
  const double ratio = dt / grid.spacing();

  double scale = 1.0;
  for (const auto& s : state.species) {
    for (double v : s.values) scale = std::max(scale, v);
  }
  const double tolerance = 1e-14 * scale;

  std::size_t clamped = 0;
  Field next(grid.cell_count());
  for (std::size_t m = 0; m < state.species.size(); ++m) {
    Field& c = state.species[m].values;
    if (grid.dim() == 1) {
      k.conservative_update(c.data(), flux.x[m].data(), flux.x[m].data() + 1, n, ratio,
                            next.data());
    } else {
      Field partial(grid.cell_count());
      k.conservative_update(c.data(), flux.x[m].data(), flux.x[m].data() + n, n * n, ratio,
                            partial.data());
      for (std::size_t j = 0; j < n; ++j) {
        const double* fy = flux.y[m].data() + j * (n + 1);
        k.conservative_update(partial.data() + j * n, fy, fy + 1, n, ratio, next.data() + j * n);
      }
    }
    for (std::size_t j = 0; j < next.size(); ++j) {
      const double v = next[j];
      if (!std::isfinite(v)) {
        throw SchemeError("non-finite concentration in species " + std::to_string(m) +
                          " cell " + std::to_string(j));
      }
      if (v < 0.0) {
        if (v < -tolerance) {
          throw SchemeError("negative concentration " + std::to_string(v) + " in species " +
                            std::to_string(m) + " cell " + std::to_string(j) +
                            " after a CFL-limited step");
        }
        next[j] = 0.0;
        ++clamped;
      }
    }
    c.swap(next);
  }
  return clamped;
}

StepReport step_forward_euler(State& state, const ModelOperators& model,
                              const BoundaryCondition& bc, const StepOptions& options,
                              double max_dt) {
  const ChemicalPotential psi = chemical_potential(state, model);
  const FaceVelocities u = face_velocities(psi, state.grid);
  const VelocityBounds bounds = max_speeds(u);

  StepReport report;
  report.u_max = bounds.u_max;
  report.v_max = bounds.v_max;
  report.dt = std::min(cfl_dt(bounds, state.grid, options), max_dt);

  const FaceFluxes f = fluxes(state, u, bc, state.time);
  if (const auto* influx = std::get_if<LeftInflux>(&bc)) {
    report.injected_mass = report.dt * f.x[influx->species][0];
  }
  report.floor_hits = apply_fluxes(state, f, report.dt);
  state.time += report.dt;
  return report;
}

double energy_rate(std::span<const Field> psi, const FaceFluxes& flux, const Grid& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.cells_per_axis());
  long double rate = 0.0L;
  if (grid.dim() == 1) {
    for (std::size_t m = 0; m < psi.size(); ++m) {
      const Field& f = flux.x[m];
      for (std::size_t j = 0; j < n; ++j) {
        rate -= static_cast<long double>(psi[m][j]) * (static_cast<long double>(f[j + 1]) - f[j]);
      }
    }
    return static_cast<double>(rate);
  }
  const long double h = grid.spacing();
  for (std::size_t m = 0; m < psi.size(); ++m) {
    const Field& fx = flux.x[m];
    const Field& fy = flux.y[m];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const long double dfx = static_cast<long double>(fx[(j + 1) * n + k]) - fx[j * n + k];
        const long double dfy =
            static_cast<long double>(fy[j * (n + 1) + k + 1]) - fy[j * (n + 1) + k];
        rate -= static_cast<long double>(psi[m][j * n + k]) * h * (dfx + dfy);
      }
    }
  }
  return static_cast<double>(rate);
}

}  // namespace ionfield
