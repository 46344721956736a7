#pragma once

#include <random>

#include "ionfield/grid.hpp"
#include "ionfield/model.hpp"

namespace cases {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

inline ionfield::KernelSpec electrostatic(Rng& rng, int dim) {
  switch (pick(rng, 5)) {
    case 0: return ionfield::ExpDecay{};
    case 1: return ionfield::RegularizedNewtonian{3, uniform(rng, 0.1, 1.0)};
    case 2: return ionfield::RegularizedNewtonian{2, uniform(rng, 0.1, 1.0)};
    case 3:
      if (dim == 2) return ionfield::Log2DCoulomb{uniform(rng, 0.1, 1.0)};
      return ionfield::VanDerWaals{uniform(rng, 0.1, 3.0), uniform(rng, 0.1, 1.0)};
    default: return ionfield::ZeroKernel{};
  }
}

inline ionfield::KernelSpec steric(Rng& rng) {
  if (pick(rng, 6) == 0) return ionfield::ZeroKernel{};
  const double eta = pick(rng, 5) == 0 ? 0.0 : uniform(rng, 0.0, 2.0);
  return ionfield::RegularizedPower{eta, uniform(rng, 1.0, 3.0), uniform(rng, 0.1, 1.0)};
}

inline ionfield::ModelConfig model(Rng& rng, int dim, int species) {
  ionfield::ModelConfig cfg;
  for (int m = 0; m < species; ++m) cfg.valences.push_back(pick(rng, 2) ? 1 + pick(rng, 2) : -1);
  cfg.electrostatic = electrostatic(rng, dim);
  cfg.steric = steric(rng);
  cfg.external.quadratic = pick(rng, 3) == 0 ? 0.0 : uniform(rng, 0.0, 2.0);
  if (dim == 1 && pick(rng, 3) == 0) cfg.external.field = uniform(rng, -3.0, 3.0);
  if (dim == 1 && pick(rng, 4) == 0) {
    cfg.correlated = ionfield::CorrelatedPotential{uniform(rng, 0.05, 8.0), uniform(rng, 0.05, 0.5)};
  }
  return cfg;
}

// Positive (or, with zeros = true, occasionally vanishing) cell averages of
// mixed smooth and rough shapes.
inline ionfield::State state(Rng& rng, const ionfield::ModelConfig& cfg, int dim, int n, double L,
                             bool zeros = false) {
  ionfield::State s;
  s.grid = ionfield::build_grid(dim, L, n);
  for (int z : cfg.valences) {
    ionfield::SpeciesField f;
    f.valence = z;
    f.values.resize(s.grid.cell_count());
    const int shape = pick(rng, 3);
    const double width = uniform(rng, 0.1, 0.5) * L;
    const double amp = std::exp(uniform(rng, -4.0, 1.0));
    for (std::size_t j = 0; j < f.values.size(); ++j) {
      double v;
      if (shape == 0) {
        v = std::max(amp * std::exp(-0.5 * s.grid.center_radius_squared(j) / (width * width)),
                     1e-12);
      } else if (shape == 1) {
        v = amp * uniform(rng, 0.01, 1.0);
      } else {
        v = amp * std::exp(uniform(rng, -20.0, 0.0));
      }
      if (zeros && pick(rng, 5) == 0) v = 0.0;
      f.values[j] = v;
    }
    s.species.push_back(std::move(f));
  }
  return s;
}

}  // namespace cases
