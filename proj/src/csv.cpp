#include "ionfield/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ionfield/errors.hpp"

namespace ionfield::csv {

std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> snapshot_header(int dim, std::size_t species) {
  std::vector<std::string> h{"x"};
  if (dim == 2) h.push_back("y");
  for (std::size_t m = 1; m <= species; ++m) h.push_back("c_" + std::to_string(m));
  for (std::size_t m = 1; m <= species; ++m) h.push_back("psi_" + std::to_string(m));
  return h;
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  const State& s = snap.state;
  const Grid& g = s.grid;
  const std::size_t ms = s.species.size();
  write_row(out, snapshot_header(g.dim(), ms));
  const int n = g.cells_per_axis();
  std::vector<std::string> row;
  auto emit = [&](std::size_t cell) {
    for (std::size_t m = 0; m < ms; ++m) row.push_back(format(s.species[m].values[cell]));
    for (std::size_t m = 0; m < ms; ++m) row.push_back(format(snap.psi[m][cell]));
    write_row(out, row);
  };
  for (int j = 0; j < n; ++j) {
    if (g.dim() == 1) {
      row = {format(g.center(j))};
      emit(static_cast<std::size_t>(j));
      continue;
    }
    for (int k = 0; k < n; ++k) {
      row = {format(g.center(j)), format(g.center(k))};
      emit(g.index(j, k));
    }
  }
}

std::vector<std::string> energy_header(std::size_t species) {
  std::vector<std::string> h{"t", "E", "F1", "F2", "F3", "F4", "D"};
  for (std::size_t m = 1; m <= species; ++m) h.push_back("mass_" + std::to_string(m));
  h.push_back("sigma2");
  for (std::size_t m = 1; m <= species; ++m) h.push_back("flatness_" + std::to_string(m));
  return h;
}

void write_energy_row(std::ostream& out, const DiagnosticsRecord& r) {
  std::vector<std::string> row{format(r.time),
                               format(r.energy.total),
                               format(r.energy.entropy),
                               format(r.energy.electrostatic),
                               format(r.energy.steric),
                               format(r.energy.external),
                               format(r.dissipation)};
  for (double m : r.mass) row.push_back(format(m));
  row.push_back(format(r.second_moment));
  for (double f : r.flatness) row.push_back(format(f));
  write_row(out, row);
}

std::vector<std::string> summary_header(std::size_t species) {
  std::vector<std::string> h;
  for (std::size_t m = 1; m <= species; ++m) h.push_back("peak_" + std::to_string(m));
  for (std::size_t m = 1; m <= species; ++m) h.push_back("flatness_" + std::to_string(m));
  h.push_back("E");
  h.push_back("D");
  return h;
}

std::vector<std::string> summary_cells(const State& final_state, const DiagnosticsRecord& last) {
  std::vector<std::string> row;
  for (const auto& s : final_state.species) {
    row.push_back(format(*std::max_element(s.values.begin(), s.values.end())));
  }
  for (double f : last.flatness) row.push_back(format(f));
  row.push_back(format(last.energy.total));
  row.push_back(format(last.dissipation));
  return row;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

Table read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    return cells;
  };
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + " is empty");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& c : split(line)) row.push_back(std::strtod(c.c_str(), nullptr));
    if (row.size() != t.header.size()) {
      throw std::runtime_error(path.string() + ": ragged row");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace ionfield::csv
