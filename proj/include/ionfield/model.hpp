#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ionfield/grid.hpp"
#include "ionfield/kernels.hpp"

namespace ionfield {

/// V_ext(x) = (q/2)|x|^2 + offset, plus a constant electric field E entering
/// species m's potential as z_m * E * x (1D only).
struct ExternalPotential {
  double quadratic = 0.0;
  double field = 0.0;
  double offset = 0.0;

  /// Confining part at squared radius r2 (valence independent).
  double confining(double r2) const noexcept { return 0.5 * quadratic * r2 + offset; }
};

/// Correlated electrostatics: the plain K * rho term is replaced by
/// (1/l_c^2) W_vdW * (K * rho) with the van der Waals smoothing kernel.
struct CorrelatedPotential {
  double correlation_length = 1.0;
  double a = 0.1;

  KernelSpec smoothing_kernel() const { return VanDerWaals{correlation_length, a}; }
};

struct ModelConfig {
  std::vector<int> valences;
  KernelSpec electrostatic = ZeroKernel{};
  KernelSpec steric = ZeroKernel{};
  ExternalPotential external;
  std::optional<CorrelatedPotential> correlated;
  /// log(max(c, log_floor)) keeps the entropy term finite on empty cells.
  double log_floor = 1e-13;

  /// Throws ValidationError naming the offending field.
  void validate(int dim) const;
};

/// Model bound to a grid: kernel tables and their convolution operators.
class ModelOperators {
 public:
  ModelOperators(ModelConfig config, const Grid& grid,
                 ConvolutionMethod method = ConvolutionMethod::Auto);

  const ModelConfig& config() const noexcept { return config_; }
  const Grid& grid() const noexcept { return grid_; }
  std::size_t species_count() const noexcept { return config_.valences.size(); }

  const Convolver& electrostatic() const noexcept { return electrostatic_; }
  const Convolver& steric() const noexcept { return steric_; }
  const Convolver* smoothing() const noexcept { return smoothing_ ? &*smoothing_ : nullptr; }

  /// Phi = K * rho, or the correlated double convolution when enabled.
  Field electrostatic_potential(std::span<const double> charge) const;
  Field steric_potential(std::span<const double> total) const;

 private:
  ModelConfig config_;
  Grid grid_;
  Convolver electrostatic_;
  Convolver steric_;
  std::optional<Convolver> smoothing_;
};

Field charge_density(const State& state);
Field total_density(const State& state);

/// Densities and the potentials they generate, shared by the chemical
/// potential and the energy so both see the same convolution results.
struct PotentialTerms {
  Field charge;
  Field total;
  Field electrostatic;  // Phi
  Field steric;         // W * theta
};

PotentialTerms potential_terms(const State& state, const ModelOperators& model);

/// Per-species discrete chemical potential, stored as a spatially varying
/// part plus one constant (1 + V_ext offset). Face velocities only see the
/// varying part, so shifting the constant leaves them bitwise unchanged.
struct ChemicalPotential {
  std::vector<Field> varying;
  double constant = 1.0;

  double value(std::size_t species, std::size_t cell) const noexcept {
    return constant + varying[species][cell];
  }
  Field full(std::size_t species) const;
  std::vector<Field> full() const;
};

/// psi_m = 1 + log(max(c_m, floor)) + z_m Phi + W * theta + V_ext + z_m E x.
/// Throws SchemeError if any concentration is negative.
ChemicalPotential chemical_potential(const State& state, const ModelOperators& model);
ChemicalPotential chemical_potential(const State& state, const ModelOperators& model,
                                     const PotentialTerms& terms);

}  // namespace ionfield
