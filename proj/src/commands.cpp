#include "ionfield/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ionfield/csv.hpp"
#include "ionfield/errors.hpp"

namespace ionfield {
namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  return out;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

RunResult quiet_run(const ScenarioConfig& config) {
  const ModelOperators model(make_model_config(config), make_grid(config),
                             config.numerics.convolution);
  RunOptions options = make_run_options(config);
  options.output_times.clear();
  options.keep_snapshots = false;
  return run(initial_state(config), model, config.boundary, options);
}

}  // namespace

RunResult cmd_simulate(const ScenarioConfig& config, const fs::path& out_dir) {
  fs::create_directories(out_dir / "snapshots");
  {
    auto cfg = open_out(out_dir / "config.json");
    cfg << to_json(config).dump(2) << '\n';
  }
  const std::size_t ms = config.species.size();
  auto energy = open_out(out_dir / "energy.csv");
  csv::write_row(energy, csv::energy_header(ms));
  auto index = open_out(out_dir / "snapshots" / "index.csv");
  csv::write_row(index, {"index", "t", "file"});

  int count = 0;
  RunOptions options = make_run_options(config);
  options.keep_snapshots = false;
  options.on_output = [&](const Snapshot& snap) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04d.csv", count);
    auto out = open_out(out_dir / "snapshots" / name);
    csv::write_snapshot(out, snap);
    csv::write_row(index, {std::to_string(count), csv::format(snap.state.time), name});
    csv::write_energy_row(energy, snap.diagnostics);
    ++count;
  };

  const ModelOperators model(make_model_config(config), make_grid(config),
                             config.numerics.convolution);
  RunResult result = run(initial_state(config), model, config.boundary, options);

  auto summary = open_out(out_dir / "summary.csv");
  csv::write_row(summary, csv::summary_header(ms));
  csv::write_row(summary, csv::summary_cells(result.final_state, result.series.back()));
  return result;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / den;
}

ConvergenceResult cmd_converge(const ScenarioConfig& config, const std::vector<int>& cells,
                               int reference_cells, const fs::path& out_dir) {
  if (!power_of_two(reference_cells)) throw ValidationError("ref", "must be a power of two");
  if (cells.empty()) throw ValidationError("n", "needs at least one grid size");
  for (int n : cells) {
    if (!power_of_two(n) || n < 2) throw ValidationError("n", "grid sizes must be powers of two");
    if (n > reference_cells) throw ValidationError("n", "grid sizes must not exceed the reference");
  }

  ScenarioConfig ref_cfg = config;
  ref_cfg.grid.cells = reference_cells;
  const State reference = quiet_run(ref_cfg).final_state;

  ConvergenceResult result;
  std::vector<double> dx, linf, l1, l2;
  for (int n : cells) {
    ScenarioConfig cfg = config;
    cfg.grid.cells = n;
    const Grid coarse = make_grid(cfg);
    std::vector<Field> restricted;
    for (const auto& s : reference.species) {
      restricted.push_back(restrict_to(s.values, reference.grid, coarse));
    }
    std::vector<Field> coarse_values;
    if (n == reference_cells) {
      for (const auto& s : reference.species) coarse_values.push_back(s.values);
    } else {
      for (auto& s : quiet_run(cfg).final_state.species) coarse_values.push_back(std::move(s.values));
    }
    ConvergenceRow row{n, coarse.spacing(), error_norms(coarse_values, restricted, coarse)};
    result.rows.push_back(row);
    dx.push_back(row.spacing);
    linf.push_back(row.error.linf);
    l1.push_back(row.error.l1);
    l2.push_back(row.error.l2);
  }
  result.slopes = {loglog_slope(dx, linf), loglog_slope(dx, l1), loglog_slope(dx, l2)};

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    auto table = open_out(out_dir / "convergence.csv");
    csv::write_row(table, {"N", "dx", "linf", "l1", "l2"});
    for (const auto& r : result.rows) {
      csv::write_row(table, {std::to_string(r.cells), csv::format(r.spacing),
                             csv::format(r.error.linf), csv::format(r.error.l1),
                             csv::format(r.error.l2)});
    }
    auto slopes = open_out(out_dir / "slopes.csv");
    csv::write_row(slopes, {"norm", "slope"});
    csv::write_row(slopes, {"linf", csv::format(result.slopes.linf)});
    csv::write_row(slopes, {"l1", csv::format(result.slopes.l1)});
    csv::write_row(slopes, {"l2", csv::format(result.slopes.l2)});
  }
  return result;
}

std::vector<SweepRun> cmd_sweep(const nlohmann::json& base, const std::string& param,
                                const std::vector<double>& values, const fs::path& out_dir) {
  if (values.empty()) throw ValidationError("values", "needs at least one value");
  // Fail fast on a bad path or value before any run starts.
  std::vector<ScenarioConfig> configs;
  for (double v : values) {
    nlohmann::json doc = base;
    set_json_path(doc, param, v);
    configs.push_back(parse_config(doc));
  }

  fs::create_directories(out_dir);
  const std::size_t ms = configs.front().species.size();
  auto summary = open_out(out_dir / "summary.csv");
  std::vector<std::string> header{"value"};
  for (auto& h : csv::summary_header(ms)) header.push_back(h);
  csv::write_row(summary, header);
  std::ofstream errors;

  std::vector<SweepRun> runs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "run_%03zu", i);
    SweepRun r;
    r.value = values[i];
    std::vector<std::string> row{csv::format(values[i])};
    try {
      RunResult res = cmd_simulate(configs[i], out_dir / name);
      r.final_record = res.series.back();
      r.final_state = std::move(res.final_state);
      for (auto& c : csv::summary_cells(r.final_state, r.final_record)) row.push_back(c);
    } catch (const std::exception& e) {
      r.error = e.what();
      if (!errors.is_open()) errors = open_out(out_dir / "errors.txt");
      errors << name << " (" << csv::format(values[i]) << "): " << e.what() << '\n';
      row.resize(header.size(), "nan");
    }
    csv::write_row(summary, row);
    runs.push_back(std::move(r));
  }
  return runs;
}

}  // namespace ionfield
