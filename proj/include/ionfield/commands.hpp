#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ionfield/grid.hpp"
#include "ionfield/scenario.hpp"
#include "ionfield/simulation.hpp"

namespace ionfield {

/// Writes into out_dir:
///   energy.csv            one diagnostics row per output time
///   snapshots/index.csv   index, t, file
///   snapshots/snapshot_NNNN.csv
///   summary.csv           peak/flatness per species, final E and D
///   config.json           the resolved config
RunResult cmd_simulate(const ScenarioConfig& config, const std::filesystem::path& out_dir);

struct ConvergenceRow {
  int cells = 0;
  double spacing = 0.0;
  ErrorNorms error;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log(error) against log(dx); NaN when undefined.
  ErrorNorms slopes;
};

/// Runs the scenario at each N and at the reference N to the config's t_end
/// and compares against the restricted reference. Writes convergence.csv and
/// slopes.csv when out_dir is non-empty.
ConvergenceResult cmd_converge(const ScenarioConfig& config, const std::vector<int>& cells,
                               int reference_cells, const std::filesystem::path& out_dir = {});

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRun {
  double value = 0.0;
  std::optional<std::string> error;
  State final_state;
  DiagnosticsRecord final_record;
};

/// One run per value with `param` (dotted JSON path) replaced. Each run writes
/// to out_dir/run_NNN; summary.csv has value, peak_*, flatness_*, E, D. A run
/// that fails gets a row of nan and its message in errors.txt; the rest go on.
std::vector<SweepRun> cmd_sweep(const nlohmann::json& base, const std::string& param,
                                const std::vector<double>& values,
                                const std::filesystem::path& out_dir);

}  // namespace ionfield
