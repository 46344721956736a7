#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ionfield/diagnostics.hpp"
#include "ionfield/model.hpp"
#include "ionfield/solver.hpp"

namespace ionfield {

struct Snapshot {
  State state;
  /// Full chemical potential per species (constant included).
  std::vector<Field> psi;
  DiagnosticsRecord diagnostics;
};

struct RunOptions {
  double t_end = 0.0;
  /// Extra output times in (0, t_end]; t = 0 and t_end are always recorded.
  std::vector<double> output_times;
  StepOptions step;
  /// Steady when the dissipation stays below this at two consecutive outputs.
  double steady_tolerance = 1e-8;
  double flatness_threshold = 1e-4;
  /// Keep every snapshot in RunResult::snapshots. The callback sees them either way.
  bool keep_snapshots = true;
  std::function<void(const Snapshot&)> on_output;
};

struct RunResult {
  State final_state;
  std::vector<DiagnosticsRecord> series;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  std::size_t floor_hits = 0;
  /// Sum over steps of dt * boundary influx.
  double injected_mass = 0.0;
  /// First output time at which the run was found steady.
  std::optional<double> steady_time;
};

/// Forward-Euler time loop. Steps are shortened to land exactly on every
/// output time and on t_end; diagnostics are recorded at those times.
RunResult run(State initial, const ModelOperators& model, const BoundaryCondition& bc,
              const RunOptions& options);

}  // namespace ionfield
