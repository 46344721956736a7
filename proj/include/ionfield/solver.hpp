#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "ionfield/grid.hpp"
#include "ionfield/model.hpp"

namespace ionfield {

/// amplitude * exp(-(t - center)^2 / (2 width^2))
struct GaussianPulse {
  double amplitude = 0.3989422804014327;  // 1/sqrt(2 pi)
  double center = 5.0;
  double width = 1.0;

  double operator()(double t) const noexcept {
    const double s = (t - center) / width;
    return amplitude * std::exp(-0.5 * s * s);
  }
};

struct NoFlux {};

/// Prescribed influx through the left end of a 1D domain for one species;
/// every other boundary flux is zero.
struct LeftInflux {
  std::size_t species = 0;
  GaussianPulse profile;
};

using BoundaryCondition = std::variant<NoFlux, LeftInflux>;

void validate_boundary(const BoundaryCondition& bc, const Grid& grid, std::size_t species_count);

/// Interior face velocities. In 1D x[m][f] sits between cells f and f+1
/// (N-1 faces). In 2D x[m] holds (N-1) x N faces, face (f, k) between cells
/// (f, k) and (f+1, k); y[m] holds N x (N-1) faces, face (j, f) between
/// (j, f) and (j, f+1). y is empty in 1D.
struct FaceVelocities {
  std::vector<Field> x;
  std::vector<Field> y;
};

/// u = -(psi_{j+1} - psi_j) / dx on every interior face.
FaceVelocities face_velocities(std::span<const Field> psi, const Grid& grid);
FaceVelocities face_velocities(const ChemicalPotential& psi, const Grid& grid);

struct UpwindSplit {
  double plus = 0.0;
  double minus = 0.0;
};

/// u = plus - minus with plus, minus >= 0 and plus * minus = 0.
inline UpwindSplit upwind_split(double u) noexcept {
  return {u > 0.0 ? u : 0.0, -u > 0.0 ? -u : 0.0};
}

/// Face fluxes including the boundary faces. 1D: x[m] has N+1 entries,
/// entry f is the flux through the face left of cell f. 2D: x[m] is
/// (N+1) x N and y[m] is N x (N+1), same convention per axis.
struct FaceFluxes {
  std::vector<Field> x;
  std::vector<Field> y;
};

FaceFluxes fluxes(const State& state, const FaceVelocities& velocities,
                  const BoundaryCondition& bc, double t);

struct VelocityBounds {
  double u_max = 0.0;
  double v_max = 0.0;
};

VelocityBounds max_speeds(const FaceVelocities& velocities);

struct StepOptions {
  /// Fraction of the CFL bound actually used.
  double safety = 0.9;
  /// Step taken when every velocity vanishes.
  double dt_cap = 1e-2;
};

/// 1D: safety * dx / (2 U_max). 2D: safety * min(dx / (4 U_max), dy / (4 V_max)),
/// an axis with zero speed imposing no limit. dt_cap when nothing moves.
double cfl_dt(VelocityBounds bounds, const Grid& grid, const StepOptions& options);
double cfl_dt(const FaceVelocities& velocities, const Grid& grid, const StepOptions& options);

struct StepReport {
  double dt = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;
  /// Cells that came out marginally negative from rounding and were set to 0.
  std::size_t floor_hits = 0;
  /// Mass that entered through the boundary during this step.
  double injected_mass = 0.0;
};

/// One forward-Euler step of the upwind finite-volume scheme, in place.
/// The step is the CFL step clipped to `max_dt`. Throws SchemeError when a
/// cell ends up below -1e-14 (relative to the largest concentration, at
/// least 1) or non-finite.
StepReport step_forward_euler(State& state, const ModelOperators& model,
                              const BoundaryCondition& bc, const StepOptions& options,
                              double max_dt = std::numeric_limits<double>::infinity());

/// Applies given fluxes over dt: c -= dt/dx (F_hi - F_lo) per axis. Returns
/// the number of clamped cells.
std::size_t apply_fluxes(State& state, const FaceFluxes& flux, double dt);

/// -sum_m sum_j psi_{m,j} (F_{j+1/2} - F_{j-1/2}) (per-axis in 2D), the time
/// derivative of the discrete energy along the semi-discrete flow.
double energy_rate(std::span<const Field> psi, const FaceFluxes& flux, const Grid& grid);

}  // namespace ionfield
