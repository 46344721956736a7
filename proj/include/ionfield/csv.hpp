#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ionfield/diagnostics.hpp"
#include "ionfield/simulation.hpp"

namespace ionfield::csv {

/// Shortest text that reads back to the same double (at most 17 significant
/// digits). NaN and infinities are written as nan / inf / -inf.
std::string format(double v);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

/// x[,y], c_1..c_M, psi_1..psi_M; one row per cell, long form in 2D.
std::vector<std::string> snapshot_header(int dim, std::size_t species);
void write_snapshot(std::ostream& out, const Snapshot& snap);

/// t, E, F1..F4, D, mass_1..M, sigma2, flatness_1..M
std::vector<std::string> energy_header(std::size_t species);
void write_energy_row(std::ostream& out, const DiagnosticsRecord& rec);

/// peak_1..M, flatness_1..M, E, D of a finished run.
std::vector<std::string> summary_header(std::size_t species);
std::vector<std::string> summary_cells(const State& final_state, const DiagnosticsRecord& last);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t column(const std::string& name) const;
};

/// Reads a numeric CSV written by this module.
Table read(const std::filesystem::path& path);

}  // namespace ionfield::csv
