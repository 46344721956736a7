#pragma once

#include <span>
#include <vector>

#include "ionfield/grid.hpp"
#include "ionfield/model.hpp"
#include "ionfield/solver.hpp"

namespace ionfield {

/// Discrete free energy split into entropy (F1), electrostatic (F2),
/// steric (F3) and external (F4) parts.
struct EnergyBreakdown {
  double total = 0.0;
  double entropy = 0.0;
  double electrostatic = 0.0;
  double steric = 0.0;
  double external = 0.0;
};

EnergyBreakdown discrete_energy(const State& state, const ModelOperators& model);
EnergyBreakdown discrete_energy(const State& state, const ModelOperators& model,
                                const PotentialTerms& terms);

/// D = sum_m sum_faces cell_measure * u^2 * min(adjacent c). In 2D the x and
/// y velocities of a cell's upper faces share the three-cell minimum.
double discrete_dissipation(const State& state, const FaceVelocities& velocities);

/// sum_m cell_measure * sum_j |x_j|^2 c_{m,j}
double second_moment(const State& state);

/// Growth-rate bound on the second moment for a regularized power steric
/// kernel: 4 m0 + (k eta + 1) zmax^2 m0^2 for dimension <= 2, and
/// 2 d m0 + (k eta a^-k + (d-2) a^(2-d) zmax^2) m0^2 for d >= 3, where m0 is
/// the summed species mass. Throws ValidationError outside that family.
double second_moment_bound_constant(const ModelConfig& model, std::span<const double> masses,
                                    int dimension);

/// Largest mass of each species inside a ball of radius r centred at a cell
/// center.
std::vector<double> maximal_density(const State& state, double radius);

/// ((2r)^2 + a^2)^(k/4): the r-dependence of the maximal density estimate.
/// Only the shape is known; the prefactor depends on the initial data.
double maximal_density_scale(double radius, double a, double exponent);

/// max - min of psi_m over cells whose concentration exceeds the species'
/// threshold. Throws ValidationError when no cell qualifies.
std::vector<double> potential_flatness(const State& state, std::span<const Field> psi,
                                       std::span<const double> thresholds);
std::vector<double> potential_flatness(const State& state, std::span<const Field> psi,
                                       double threshold);

struct DiagnosticsRecord {
  double time = 0.0;
  std::vector<double> mass;
  EnergyBreakdown energy;
  double dissipation = 0.0;
  double second_moment = 0.0;
  std::vector<double> flatness;
};

/// Evaluates every observable at `state`. Flatness uses a per-species
/// threshold of `relative_threshold` times that species' peak value.
DiagnosticsRecord record_diagnostics(const State& state, const ModelOperators& model,
                                     double relative_threshold = 1e-4);

/// Same, reusing an already evaluated potential.
DiagnosticsRecord record_diagnostics(const State& state, const ModelOperators& model,
                                     const PotentialTerms& terms, const ChemicalPotential& psi,
                                     double relative_threshold = 1e-4);

}  // namespace ionfield
