#include "ionfield/model.hpp"

#include <cmath>
#include <string>

#include "ionfield/errors.hpp"

namespace ionfield {

void ModelConfig::validate(int dim) const {
  if (valences.empty()) throw ValidationError("species", "at least one species is required");
  validate_kernel(electrostatic, "kernels.electrostatic");
  validate_kernel(steric, "kernels.steric");
  if (!std::isfinite(external.quadratic) || external.quadratic < 0.0) {
    throw ValidationError("external.quadratic", "must be finite and non-negative");
  }
  if (!std::isfinite(external.field)) throw ValidationError("external.field", "must be finite");
  if (!std::isfinite(external.offset)) throw ValidationError("external.offset", "must be finite");
  if (dim != 1 && external.field != 0.0) {
    throw ValidationError("external.field", "a constant electric field is only supported in 1D");
  }
  if (correlated) {
    if (!(correlated->correlation_length > 0.0) || !std::isfinite(correlated->correlation_length)) {
      throw ValidationError("correlated.l_c", "must be positive and finite");
    }
    if (!(correlated->a > 0.0) || !std::isfinite(correlated->a)) {
      throw ValidationError("correlated.a", "must be positive and finite");
    }
  }
  if (!(log_floor > 0.0)) throw ValidationError("numerics.log_floor", "must be positive");
}

ModelOperators::ModelOperators(ModelConfig config, const Grid& grid, ConvolutionMethod method)
    : config_((config.validate(grid.dim()), std::move(config))),
      grid_(grid),
      electrostatic_(KernelTable::build(config_.electrostatic, grid), method),
      steric_(KernelTable::build(config_.steric, grid), method) {
  if (config_.correlated) {
    smoothing_.emplace(KernelTable::build(config_.correlated->smoothing_kernel(), grid), method);
  }
}

Field ModelOperators::electrostatic_potential(std::span<const double> charge) const {
  if (smoothing_) {
    return double_convolve(*smoothing_, electrostatic_, charge,
                           config_.correlated->correlation_length);
  }
  return electrostatic_.apply(charge);
}

Field ModelOperators::steric_potential(std::span<const double> total) const {
  return steric_.apply(total);
}

Field charge_density(const State& state) {
  Field rho(state.grid.cell_count(), 0.0);
  for (const auto& s : state.species) {
    const double z = s.valence;
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] += z * s.values[j];
  }
  return rho;
}

Field total_density(const State& state) {
  Field theta(state.grid.cell_count(), 0.0);
  for (const auto& s : state.species) {
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] += s.values[j];
  }
  return theta;
}

PotentialTerms potential_terms(const State& state, const ModelOperators& model) {
  PotentialTerms t;
  t.charge = charge_density(state);
  t.total = total_density(state);
  t.electrostatic = model.electrostatic_potential(t.charge);
  t.steric = model.steric_potential(t.total);
  return t;
}

Field ChemicalPotential::full(std::size_t species) const {
  Field out = varying[species];
  for (double& v : out) v += constant;
  return out;
}

std::vector<Field> ChemicalPotential::full() const {
  std::vector<Field> out;
  out.reserve(varying.size());
  for (std::size_t m = 0; m < varying.size(); ++m) out.push_back(full(m));
  return out;
}

ChemicalPotential chemical_potential(const State& state, const ModelOperators& model) {
  return chemical_potential(state, model, potential_terms(state, model));
}

ChemicalPotential chemical_potential(const State& state, const ModelOperators& model,
                                     const PotentialTerms& terms) {
  const ModelConfig& cfg = model.config();
  if (state.species.size() != cfg.valences.size()) {
    throw ValidationError("species", "state and model disagree on the number of species");
  }
  const Grid& grid = state.grid;
  const std::size_t cells = grid.cell_count();

  // Valence-independent external part, evaluated once.
  Field confining(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    confining[j] = 0.5 * cfg.external.quadratic * grid.center_radius_squared(j);
  }

  ChemicalPotential psi;
  psi.constant = 1.0 + cfg.external.offset;
  psi.varying.resize(state.species.size());
  for (std::size_t m = 0; m < state.species.size(); ++m) {
    const auto& c = state.species[m].values;
    const double z = state.species[m].valence;
    Field& out = psi.varying[m];
    out.resize(cells);
    for (std::size_t j = 0; j < cells; ++j) {
      if (c[j] < 0.0) {
        throw SchemeError("negative concentration " + std::to_string(c[j]) + " in species " +
                          std::to_string(m) + " cell " + std::to_string(j));
      }
      double v = std::log(std::max(c[j], cfg.log_floor));
      v += z * terms.electrostatic[j];
      v += terms.steric[j];
      v += confining[j];
      if (cfg.external.field != 0.0) v += z * cfg.external.field * grid.center(static_cast<int>(j));
      out[j] = v;
    }
  }
  return psi;
}

}  // namespace ionfield
