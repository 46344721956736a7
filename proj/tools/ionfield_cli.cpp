// ionfield: simulate / converge / sweep driver.
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ionfield/commands.hpp"
#include "ionfield/errors.hpp"
#include "ionfield/scenario.hpp"
#include "ionfield/simd.hpp"

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* field) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    T v{};
    try {
      if constexpr (std::is_integral_v<T>) {
        v = static_cast<T>(std::stol(item, &used));
      } else {
        v = std::stod(item, &used);
      }
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ionfield::ValidationError(field, "bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ionfield::ValidationError(field, "empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal multi-species ion transport solver"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "Kernel variant: auto, scalar, avx2")->capture_default_str();

  std::string config, out;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario and write CSVs");
  simulate->add_option("--config", config, "Scenario JSON")->required();
  simulate->add_option("--out", out, "Output directory")->required();

  std::string n_list;
  int ref = 2048;
  auto* converge = app.add_subcommand("converge", "Grid-refinement study");
  converge->add_option("--config", config, "Scenario JSON")->required();
  converge->add_option("--n", n_list, "Comma-separated cell counts")->required();
  converge->add_option("--ref", ref, "Reference cell count")->capture_default_str();
  converge->add_option("--out", out, "Output directory")->required();

  std::string param, values;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario for a list of parameter values");
  sweep->add_option("--config", config, "Scenario JSON")->required();
  sweep->add_option("--param", param, "Dotted path, e.g. kernels.steric.eta")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    ionfield::simd::select(ionfield::simd::parse_isa(simd));
    if (simulate->parsed()) {
      const auto result = ionfield::cmd_simulate(ionfield::load_config(config), out);
      std::printf("t = %g after %zu steps; E = %.10g, D = %.3e\n", result.final_state.time,
                  result.steps, result.series.back().energy.total,
                  result.series.back().dissipation);
    } else if (converge->parsed()) {
      const auto result = ionfield::cmd_converge(ionfield::load_config(config),
                                                 parse_list<int>(n_list, "n"), ref, out);
      for (const auto& r : result.rows) {
        std::printf("N = %5d  linf %.3e  l1 %.3e  l2 %.3e\n", r.cells, r.error.linf, r.error.l1,
                    r.error.l2);
      }
      std::printf("slopes: linf %.3f  l1 %.3f  l2 %.3f\n", result.slopes.linf, result.slopes.l1,
                  result.slopes.l2);
    } else {
      const auto runs = ionfield::cmd_sweep(ionfield::read_json(config), param,
                                            parse_list<double>(values, "values"), out);
      int failed = 0;
      for (const auto& r : runs) {
        if (r.error) {
          ++failed;
          std::fprintf(stderr, "value %g failed: %s\n", r.value, r.error->c_str());
        }
      }
      if (failed) return 2;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
