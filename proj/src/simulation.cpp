#include "ionfield/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionfield/errors.hpp"

namespace ionfield {
namespace {

std::vector<double> output_schedule(const RunOptions& options) {
  std::vector<double> times;
  for (double t : options.output_times) {
    if (!std::isfinite(t)) throw ValidationError("time.output_times", "must be finite");
    if (t > 0.0 && t < options.t_end) times.push_back(t);
  }
  if (options.t_end > 0.0) times.push_back(options.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace

RunResult run(State initial, const ModelOperators& model, const BoundaryCondition& bc,
              const RunOptions& options) {
  if (!(options.t_end >= 0.0) || !std::isfinite(options.t_end)) {
    throw ValidationError("time.t_end", "must be finite and non-negative");
  }
  if (!(options.step.safety > 0.0) || options.step.safety > 1.0) {
    throw ValidationError("time.safety", "must lie in (0, 1]");
  }
  if (!(options.step.dt_cap > 0.0)) throw ValidationError("time.dt_cap", "must be positive");
  initial.check_consistent();
  if (initial.grid != model.grid()) throw ValidationError("grid", "state and model grids differ");
  validate_boundary(bc, initial.grid, initial.species.size());

  RunResult result;
  result.final_state = std::move(initial);
  State& state = result.final_state;

  int consecutive_quiet = 0;
  auto record = [&] {
    const PotentialTerms terms = potential_terms(state, model);
    const ChemicalPotential psi = chemical_potential(state, model, terms);
    Snapshot snap{state, psi.full(),
                  record_diagnostics(state, model, terms, psi, options.flatness_threshold)};
    result.series.push_back(snap.diagnostics);
    if (snap.diagnostics.dissipation < options.steady_tolerance) {
      if (++consecutive_quiet >= 2 && !result.steady_time) result.steady_time = state.time;
    } else {
      consecutive_quiet = 0;
    }
    if (options.on_output) options.on_output(snap);
    if (options.keep_snapshots) result.snapshots.push_back(std::move(snap));
  };

  record();
  for (double target : output_schedule(options)) {
    while (state.time < target) {
      const double remaining = target - state.time;
      const double before = state.time;
      const StepReport report = step_forward_euler(state, model, bc, options.step, remaining);
      if (report.dt == remaining) state.time = target;
      if (state.time == before) {
        throw SchemeError("time step underflow at t = " + std::to_string(before));
      }
      ++result.steps;
      result.floor_hits += report.floor_hits;
      result.injected_mass += report.injected_mass;
    }
    record();
  }
  return result;
}

}  // namespace ionfield
