#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ionfield/grid.hpp"
#include "ionfield/kernels.hpp"
#include "ionfield/model.hpp"
#include "ionfield/simulation.hpp"
#include "ionfield/solver.hpp"

namespace ionfield {

/// amplitude * exp(-|x - center|^2 / (2 variance)); center has one entry
/// per grid axis.
struct GaussianProfile {
  double amplitude = 1.0;
  std::vector<double> center;
  double variance = 1.0;
};

struct ConstantProfile {
  double value = 0.0;
};

using InitialProfile = std::variant<GaussianProfile, ConstantProfile>;

struct SpeciesConfig {
  int valence = 1;
  InitialProfile initial = ConstantProfile{};
};

struct GridConfig {
  int dim = 1;
  double half_width = 1.0;
  int cells = 2;
};

struct TimeConfig {
  double t_end = 1.0;
  std::vector<double> output_times;
  double safety = 0.9;
  double dt_cap = 1e-2;
};

struct NumericsConfig {
  ConvolutionMethod convolution = ConvolutionMethod::Auto;
  double log_floor = 1e-13;
  double steady_tolerance = 1e-8;
  double flatness_threshold = 1e-4;
};

struct ScenarioConfig {
  std::string name;
  GridConfig grid;
  std::vector<SpeciesConfig> species;
  KernelSpec electrostatic = ZeroKernel{};
  KernelSpec steric = ZeroKernel{};
  ExternalPotential external;
  BoundaryCondition boundary = NoFlux{};
  TimeConfig time;
  std::optional<CorrelatedPotential> correlated;
  NumericsConfig numerics;
};

/// Parses and validates. Throws ValidationError naming the offending field
/// by its dotted path (e.g. "grid.N", "species[1].initial.variance").
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON document from disk, then parse_config. Malformed JSON is
/// reported as ValidationError with an empty field.
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioConfig& config);

Grid make_grid(const ScenarioConfig& config);
ModelConfig make_model_config(const ScenarioConfig& config);

/// Cell-center samples of each species' initial profile at t = 0.
State initial_state(const ScenarioConfig& config);

RunOptions make_run_options(const ScenarioConfig& config);

/// Replaces the value at a dotted path ("kernels.steric.eta",
/// "species.0.valence") in a JSON document. Intermediate objects must exist.
void set_json_path(nlohmann::json& doc, const std::string& path, double value);

}  // namespace ionfield
