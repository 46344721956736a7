#include "ionfield/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ionfield/errors.hpp"

namespace ionfield {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ValidationError(path, "is required");
  return obj.at(key);
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(path, "must be finite");
  return d;
}

double require_number(const json& obj, const char* key, const std::string& path) {
  return number_at(require(obj, key, path), path);
}

double optional_number(const json& obj, const char* key, const std::string& path,
                       double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number_at(obj.at(key), path);
}

int integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    if (v.is_number() && std::floor(v.get<double>()) == v.get<double>()) {
      return static_cast<int>(v.get<double>());
    }
    throw ValidationError(path, "must be an integer");
  }
  return v.get<int>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "must be a string");
  return v.get<std::string>();
}

void require_positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ValidationError(path, "must be positive");
}

KernelSpec parse_kernel(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "must be an object");
  const std::string type = string_at(require(obj, "type", path + ".type"), path + ".type");
  KernelSpec spec;
  if (type == "regularized_newtonian") {
    spec = RegularizedNewtonian{integer_at(require(obj, "d", path + ".d"), path + ".d"),
                                require_number(obj, "a", path + ".a")};
  } else if (type == "regularized_power") {
    spec = RegularizedPower{require_number(obj, "eta", path + ".eta"),
                            require_number(obj, "k", path + ".k"),
                            require_number(obj, "a", path + ".a")};
  } else if (type == "log2d_coulomb") {
    spec = Log2DCoulomb{require_number(obj, "a", path + ".a")};
  } else if (type == "exp_decay") {
    spec = ExpDecay{};
  } else if (type == "van_der_waals") {
    spec = VanDerWaals{require_number(obj, "l_c", path + ".l_c"),
                       require_number(obj, "a", path + ".a")};
  } else if (type == "zero") {
    spec = ZeroKernel{};
  } else {
    throw ValidationError(path + ".type", "unknown kernel type '" + type + "'");
  }
  validate_kernel(spec, path);
  return spec;
}

json kernel_to_json(const KernelSpec& spec) {
  json j;
  j["type"] = std::string(kernel_type_name(spec));
  if (const auto* k = std::get_if<RegularizedNewtonian>(&spec)) {
    j["d"] = k->dimension;
    j["a"] = k->a;
  } else if (const auto* k = std::get_if<RegularizedPower>(&spec)) {
    j["eta"] = k->eta;
    j["k"] = k->exponent;
    j["a"] = k->a;
  } else if (const auto* k = std::get_if<Log2DCoulomb>(&spec)) {
    j["a"] = k->a;
  } else if (const auto* k = std::get_if<VanDerWaals>(&spec)) {
    j["l_c"] = k->correlation_length;
    j["a"] = k->a;
  }
  return j;
}

InitialProfile parse_profile(const json& obj, const std::string& path, int dim) {
  if (!obj.is_object()) throw ValidationError(path, "must be an object");
  const std::string type = string_at(require(obj, "type", path + ".type"), path + ".type");
  if (type == "constant") {
    const double v = require_number(obj, "value", path + ".value");
    if (v < 0.0) throw ValidationError(path + ".value", "must be non-negative");
    return ConstantProfile{v};
  }
  if (type != "gaussian") {
    throw ValidationError(path + ".type", "unknown profile type '" + type + "'");
  }
  GaussianProfile g;
  g.amplitude = require_number(obj, "amplitude", path + ".amplitude");
  if (g.amplitude < 0.0) throw ValidationError(path + ".amplitude", "must be non-negative");
  g.variance = require_number(obj, "variance", path + ".variance");
  require_positive(g.variance, path + ".variance");
  const json& center = require(obj, "center", path + ".center");
  if (center.is_number()) {
    g.center.push_back(number_at(center, path + ".center"));
  } else if (center.is_array()) {
    for (std::size_t i = 0; i < center.size(); ++i) {
      g.center.push_back(number_at(center[i], path + ".center[" + std::to_string(i) + "]"));
    }
  } else {
    throw ValidationError(path + ".center", "must be a number or an array of numbers");
  }
  if (static_cast<int>(g.center.size()) != dim) {
    throw ValidationError(path + ".center", "needs one coordinate per grid axis");
  }
  return g;
}

json profile_to_json(const InitialProfile& p) {
  if (const auto* c = std::get_if<ConstantProfile>(&p)) {
    return json{{"type", "constant"}, {"value", c->value}};
  }
  const auto& g = std::get<GaussianProfile>(p);
  return json{{"type", "gaussian"},
              {"amplitude", g.amplitude},
              {"center", g.center},
              {"variance", g.variance}};
}

BoundaryCondition parse_boundary(const json& obj) {
  if (!obj.is_object()) throw ValidationError("boundary", "must be an object");
  const std::string type = string_at(require(obj, "type", "boundary.type"), "boundary.type");
  if (type == "no_flux") return NoFlux{};
  if (type != "left_influx") {
    throw ValidationError("boundary.type", "unknown boundary type '" + type + "'");
  }
  LeftInflux b;
  const int species = integer_at(require(obj, "species", "boundary.species"), "boundary.species");
  if (species < 0) throw ValidationError("boundary.species", "must be non-negative");
  b.species = static_cast<std::size_t>(species);
  b.profile.amplitude = require_number(obj, "amplitude", "boundary.amplitude");
  b.profile.center = require_number(obj, "center", "boundary.center");
  b.profile.width = require_number(obj, "width", "boundary.width");
  return b;
}

}  // namespace

ScenarioConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("", "scenario document must be a JSON object");
  ScenarioConfig cfg;
  if (doc.contains("name")) cfg.name = string_at(doc.at("name"), "name");

  const json& grid = require(doc, "grid", "grid");
  cfg.grid.dim = grid.contains("dim") ? integer_at(grid.at("dim"), "grid.dim") : 1;
  cfg.grid.half_width = require_number(grid, "L", "grid.L");
  cfg.grid.cells = integer_at(require(grid, "N", "grid.N"), "grid.N");
  const Grid g = Grid::make(cfg.grid.dim, cfg.grid.half_width, cfg.grid.cells);

  const json& species = require(doc, "species", "species");
  if (!species.is_array() || species.empty()) {
    throw ValidationError("species", "must be a non-empty array");
  }
  for (std::size_t m = 0; m < species.size(); ++m) {
    const std::string path = "species[" + std::to_string(m) + "]";
    SpeciesConfig s;
    s.valence = integer_at(require(species[m], "valence", path + ".valence"), path + ".valence");
    s.initial = parse_profile(require(species[m], "initial", path + ".initial"), path + ".initial",
                              cfg.grid.dim);
    cfg.species.push_back(std::move(s));
  }

  if (doc.contains("kernels")) {
    const json& k = doc.at("kernels");
    if (k.contains("electrostatic")) {
      cfg.electrostatic = parse_kernel(k.at("electrostatic"), "kernels.electrostatic");
    }
    if (k.contains("steric")) cfg.steric = parse_kernel(k.at("steric"), "kernels.steric");
  }

  if (doc.contains("external")) {
    const json& e = doc.at("external");
    cfg.external.quadratic = optional_number(e, "quadratic", "external.quadratic", 0.0);
    cfg.external.field = optional_number(e, "field", "external.field", 0.0);
    cfg.external.offset = optional_number(e, "offset", "external.offset", 0.0);
  }

  if (doc.contains("boundary")) cfg.boundary = parse_boundary(doc.at("boundary"));

  const json& time = require(doc, "time", "time");
  cfg.time.t_end = require_number(time, "t_end", "time.t_end");
  if (cfg.time.t_end < 0.0) throw ValidationError("time.t_end", "must be non-negative");
  if (time.contains("output_times")) {
    const json& ts = time.at("output_times");
    if (!ts.is_array()) throw ValidationError("time.output_times", "must be an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string path = "time.output_times[" + std::to_string(i) + "]";
      const double t = number_at(ts[i], path);
      if (t < 0.0 || t > cfg.time.t_end) throw ValidationError(path, "must lie in [0, t_end]");
      cfg.time.output_times.push_back(t);
    }
  }
  cfg.time.safety = optional_number(time, "safety", "time.safety", 0.9);
  if (!(cfg.time.safety > 0.0) || cfg.time.safety > 1.0) {
    throw ValidationError("time.safety", "must lie in (0, 1]");
  }
  cfg.time.dt_cap = optional_number(time, "dt_cap", "time.dt_cap", 1e-2);
  require_positive(cfg.time.dt_cap, "time.dt_cap");

  if (doc.contains("correlated")) {
    const json& c = doc.at("correlated");
    const bool enabled = c.contains("enabled") && c.at("enabled").is_boolean()
                             ? c.at("enabled").get<bool>()
                             : false;
    if (c.contains("enabled") && !c.at("enabled").is_boolean()) {
      throw ValidationError("correlated.enabled", "must be a boolean");
    }
    if (enabled) {
      CorrelatedPotential p;
      p.correlation_length = require_number(c, "l_c", "correlated.l_c");
      p.a = optional_number(c, "a", "correlated.a", 0.1);
      cfg.correlated = p;
    }
  }

  if (doc.contains("numerics")) {
    const json& n = doc.at("numerics");
    if (n.contains("convolution")) {
      cfg.numerics.convolution =
          parse_convolution_method(string_at(n.at("convolution"), "numerics.convolution"));
    }
    cfg.numerics.log_floor = optional_number(n, "log_floor", "numerics.log_floor", 1e-13);
    cfg.numerics.steady_tolerance = optional_number(n, "steady_tol", "numerics.steady_tol", 1e-8);
    cfg.numerics.flatness_threshold =
        optional_number(n, "flatness_threshold", "numerics.flatness_threshold", 1e-4);
    require_positive(cfg.numerics.log_floor, "numerics.log_floor");
    require_positive(cfg.numerics.steady_tolerance, "numerics.steady_tol");
    require_positive(cfg.numerics.flatness_threshold, "numerics.flatness_threshold");
  }

  make_model_config(cfg).validate(cfg.grid.dim);
  validate_boundary(cfg.boundary, g, cfg.species.size());
  return cfg;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("", "cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("", "cannot parse " + path.string() + ": " + e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json(path));
}

nlohmann::json to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["grid"] = {{"dim", cfg.grid.dim}, {"L", cfg.grid.half_width}, {"N", cfg.grid.cells}};
  doc["species"] = json::array();
  for (const auto& s : cfg.species) {
    doc["species"].push_back({{"valence", s.valence}, {"initial", profile_to_json(s.initial)}});
  }
  doc["kernels"] = {{"electrostatic", kernel_to_json(cfg.electrostatic)},
                    {"steric", kernel_to_json(cfg.steric)}};
  doc["external"] = {{"quadratic", cfg.external.quadratic},
                     {"field", cfg.external.field},
                     {"offset", cfg.external.offset}};
  if (const auto* b = std::get_if<LeftInflux>(&cfg.boundary)) {
    doc["boundary"] = {{"type", "left_influx"},
                       {"species", b->species},
                       {"amplitude", b->profile.amplitude},
                       {"center", b->profile.center},
                       {"width", b->profile.width}};
  } else {
    doc["boundary"] = {{"type", "no_flux"}};
  }
  doc["time"] = {{"t_end", cfg.time.t_end},
                 {"output_times", cfg.time.output_times},
                 {"safety", cfg.time.safety},
                 {"dt_cap", cfg.time.dt_cap}};
  if (cfg.correlated) {
    doc["correlated"] = {
        {"enabled", true}, {"l_c", cfg.correlated->correlation_length}, {"a", cfg.correlated->a}};
  } else {
    doc["correlated"] = {{"enabled", false}};
  }
  doc["numerics"] = {{"convolution", std::string(convolution_method_name(cfg.numerics.convolution))},
                     {"log_floor", cfg.numerics.log_floor},
                     {"steady_tol", cfg.numerics.steady_tolerance},
                     {"flatness_threshold", cfg.numerics.flatness_threshold}};
  return doc;
}

Grid make_grid(const ScenarioConfig& cfg) {
  return Grid::make(cfg.grid.dim, cfg.grid.half_width, cfg.grid.cells);
}

ModelConfig make_model_config(const ScenarioConfig& cfg) {
  ModelConfig m;
  for (const auto& s : cfg.species) m.valences.push_back(s.valence);
  m.electrostatic = cfg.electrostatic;
  m.steric = cfg.steric;
  m.external = cfg.external;
  m.correlated = cfg.correlated;
  m.log_floor = cfg.numerics.log_floor;
  return m;
}

State initial_state(const ScenarioConfig& cfg) {
  State state;
  state.grid = make_grid(cfg);
  const Grid& g = state.grid;
  const int n = g.cells_per_axis();
  for (const auto& s : cfg.species) {
    SpeciesField f;
    f.valence = s.valence;
    f.values.resize(g.cell_count());
    if (const auto* c = std::get_if<ConstantProfile>(&s.initial)) {
      std::fill(f.values.begin(), f.values.end(), c->value);
    } else {
      const auto& p = std::get<GaussianProfile>(s.initial);
      const double denom = 2.0 * p.variance;
      if (g.dim() == 1) {
        for (int j = 0; j < n; ++j) {
          const double dx = g.center(j) - p.center[0];
          f.values[static_cast<std::size_t>(j)] = p.amplitude * std::exp(-dx * dx / denom);
        }
      } else {
        for (int j = 0; j < n; ++j) {
          const double dx = g.center(j) - p.center[0];
          for (int k = 0; k < n; ++k) {
            const double dy = g.center(k) - p.center[1];
            f.values[g.index(j, k)] = p.amplitude * std::exp(-(dx * dx + dy * dy) / denom);
          }
        }
      }
    }
    state.species.push_back(std::move(f));
  }
  return state;
}

RunOptions make_run_options(const ScenarioConfig& cfg) {
  RunOptions o;
  o.t_end = cfg.time.t_end;
  o.output_times = cfg.time.output_times;
  o.step.safety = cfg.time.safety;
  o.step.dt_cap = cfg.time.dt_cap;
  o.steady_tolerance = cfg.numerics.steady_tolerance;
  o.flatness_threshold = cfg.numerics.flatness_threshold;
  return o;
}

void set_json_path(nlohmann::json& doc, const std::string& path, double value) {
  json* node = &doc;
  std::stringstream ss(path);
  std::string token;
  std::vector<std::string> tokens;
  while (std::getline(ss, token, '.')) tokens.push_back(token);
  if (tokens.empty()) throw ValidationError("param", "empty parameter path");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    const bool last = i + 1 == tokens.size();
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = static_cast<std::size_t>(std::stoul(t));
      } catch (const std::exception&) {
        throw ValidationError(path, "'" + t + "' is not an array index");
      }
      if (idx >= node->size()) throw ValidationError(path, "array index out of range");
      node = &(*node)[idx];
    } else if (node->is_object()) {
      if (!last && !node->contains(t)) throw ValidationError(path, "no field '" + t + "'");
      node = &(*node)[t];
    } else {
      throw ValidationError(path, "cannot descend into a scalar at '" + t + "'");
    }
  }
  *node = value;
}

}  // namespace ionfield
