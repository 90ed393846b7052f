#include "mlb_cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mlb/maxwellian.hpp"

namespace mlb::cli {

namespace {

std::string locate(const std::string& source, int line, int column) {
  if (line <= 0) return source;
  return fmt::format("{}:{}:{}", source, line, column);
}

// Positions are 1-based in messages; yaml-cpp marks are 0-based.
struct Where {
  int line = 0;
  int column = 0;
};

Where where(const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.line < 0) return {};
  return {mark.line + 1, mark.column + 1};
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& message) const {
    const auto w = where(node);
    throw ConfigError(source_, w.line, w.column, fmt::format("{}: {}", key, message));
  }

  void expect_map(const YAML::Node& node, const std::string& key) const {
    if (!node.IsMap()) fail(node, key, "expected a mapping");
  }

  void reject_unknown(const YAML::Node& node, const std::string& prefix, const std::set<std::string>& known) const {
    for (const auto& item : node) {
      const auto name = item.first.as<std::string>();
      if (known.count(name) == 0) fail(item.first, join(prefix, name), "unknown key");
    }
  }

  double number(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected a number");
    double value = 0.0;
    try {
      value = node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, key, fmt::format("'{}' is not a number", node.Scalar()));
    }
    if (!std::isfinite(value)) fail(node, key, "must be finite");
    return value;
  }

  double positive(const YAML::Node& node, const std::string& key) const {
    const double value = number(node, key);
    if (!(value > 0.0)) fail(node, key, fmt::format("{} > 0 violated", key));
    return value;
  }

  int integer(const YAML::Node& node, const std::string& key, int minimum) const {
    if (!node.IsScalar()) fail(node, key, "expected an integer");
    long long value = 0;
    try {
      value = node.as<long long>();
    } catch (const YAML::Exception&) {
      fail(node, key, fmt::format("'{}' is not an integer", node.Scalar()));
    }
    if (value < minimum) fail(node, key, fmt::format("{} >= {} violated (got {})", key, minimum, value));
    if (value > std::numeric_limits<int>::max()) fail(node, key, "too large");
    return static_cast<int>(value);
  }

  std::string text(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected a string");
    return node.Scalar();
  }

  static std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
  }

  [[nodiscard]] const std::string& source() const { return source_; }

 private:
  std::string source_;
};

std::vector<double> square_table(const Reader& r, const YAML::Node& node, const std::string& key, std::size_t n) {
  if (!node.IsSequence() || node.size() != n) {
    r.fail(node, key, fmt::format("expected a list of {} rows", n));
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = node[i];
    const auto row_key = fmt::format("{}[{}]", key, i + 1);
    if (!row.IsSequence() || row.size() != n) r.fail(row, row_key, fmt::format("expected {} entries", n));
    for (std::size_t j = 0; j < n; ++j) {
      values.push_back(r.number(row[j], fmt::format("{}[{}][{}]", key, i + 1, j + 1)));
    }
  }
  return values;
}

// Node positions kept for post-parse validation messages.
struct Marks {
  Where kappa;
  std::vector<Where> kappa_entries;
  Where log_lambda;
};

void validate_kappa(const SimConfig& config, const Marks* marks) {
  const std::size_t n = config.species.size();
  std::vector<double> masses;
  for (const auto& s : config.species) masses.push_back(s.mass);

  const auto fail = [&](std::size_t i, std::size_t j, const std::string& message) {
    Where w;
    if (marks != nullptr) {
      w = marks->kappa;
      if (config.kappa.kind == KappaConfig::Kind::Table && marks->kappa_entries.size() == n * n) {
        w = marks->kappa_entries[i * n + j];
      }
    }
    throw ConfigError(config.source, w.line, w.column,
                      fmt::format("kappa({},{}): {}", i + 1, j + 1, message));
  };

  if (config.kappa.kind == KappaConfig::Kind::Scaled && config.kappa.value < 1.0) {
    Where w = marks != nullptr ? marks->kappa : Where{};
    throw ConfigError(config.source, w.line, w.column,
                      fmt::format("kappa.scale: scale >= 1 violated (got {})", config.kappa.value));
  }
  const auto table = config.kappa_table();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double mu = kappa_lower_bound(masses[i], masses[j]);
      const double k = table(i, j);
      if (!(k >= mu)) {
        fail(i, j, fmt::format("kappa_{},{} = {} < mu_{},{} = {} (requires kappa >= (m_i + m_j)/(2 m_i))", i + 1,
                               j + 1, k, i + 1, j + 1, mu));
      }
    }
  }
}

void validate_all(const SimConfig& c, const Marks* marks) {
  const auto plain = [&](const std::string& message) { throw ConfigError(c.source, 0, 0, message); };
  if (c.species.empty()) plain("species: at least one species required");
  for (std::size_t i = 0; i < c.species.size(); ++i) {
    const auto& s = c.species[i];
    const auto key = fmt::format("species[{}]", i + 1);
    if (!(s.mass > 0.0)) plain(key + ".mass: mass > 0 violated");
    if (!(s.density > 0.0)) plain(key + ".density: density > 0 violated");
    if (!(s.temperature > 0.0)) plain(key + ".temperature: temperature > 0 violated");
    if (!std::isfinite(s.charge)) plain(key + ".charge: must be finite");
    if (!std::isfinite(s.velocity)) plain(key + ".velocity: must be finite");
  }
  const std::size_t n = c.species.size();
  if (!(c.epsilon0 > 0.0)) plain("epsilon0: epsilon0 > 0 violated");
  if (c.log_lambda.size() != n * n) plain("log_lambda: table must be N x N");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c.log_lambda[i * n + j] != c.log_lambda[j * n + i]) {
        Where w = marks != nullptr ? marks->log_lambda : Where{};
        throw ConfigError(c.source, w.line, w.column,
                          fmt::format("log_lambda: log_lambda({},{}) = log_lambda({},{}) violated", i + 1, j + 1,
                                      j + 1, i + 1));
      }
    }
  }
  if (c.kappa.kind == KappaConfig::Kind::Table && c.kappa.table.size() != n * n) {
    plain("kappa.table: table must be N x N");
  }
  if (!(c.v_max > 0.0)) plain("grid.v_max: v_max > 0 violated");
  if (c.cells < 4) plain("grid.cells: cells >= 4 violated");
  if (!(c.dt > 0.0)) plain("time.dt: dt > 0 violated");
  if (!(c.t_end >= 0.0)) plain("time.t_end: t_end >= 0 violated");
  if (!(c.reference_dt > 0.0)) plain("time.reference_dt: reference_dt > 0 violated");
  if (!(c.gst_tolerance > 0.0)) plain("solver.gst_tolerance: gst_tolerance > 0 violated");
  if (c.gst_max_iterations < 1) plain("solver.gst_max_iterations: gst_max_iterations >= 1 violated");
  if (!(c.drift_threshold > 0.0)) plain("solver.drift_threshold: drift_threshold > 0 violated");
  if (c.stride < 1) plain("output.stride: stride >= 1 violated");
  validate_kappa(c, marks);
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(locate(source, line, column) + ": " + message), line_(line), column_(column) {}

const char* to_string(Mode mode) { return mode == Mode::Grid ? "grid" : "moments"; }

Mode parse_mode(const std::string& text) {
  if (text == "grid") return Mode::Grid;
  if (text == "moments") return Mode::Moments;
  throw std::invalid_argument("mode must be 'grid' or 'moments', got '" + text + "'");
}

SpeciesSet SimConfig::species_set() const {
  std::vector<SpeciesSpec> specs;
  for (const auto& s : species) specs.push_back({s.mass, s.charge, s.density, s.name});
  return SpeciesSet(std::move(specs), epsilon0, log_lambda);
}

KappaTable SimConfig::kappa_table() const {
  const std::size_t n = species.size();
  switch (kappa.kind) {
    case KappaConfig::Kind::Uniform:
      return KappaTable::uniform(n, kappa.value);
    case KappaConfig::Kind::Scaled: {
      std::vector<double> masses;
      for (const auto& s : species) masses.push_back(s.mass);
      return KappaTable::scaled(masses, kappa.value);
    }
    case KappaConfig::Kind::Table:
      break;
  }
  return KappaTable(n, kappa.table);
}

VelocityGrid SimConfig::grid() const { return VelocityGrid(v_max, cells); }

SolverOptions SimConfig::solver_options() const {
  SolverOptions options;
  options.gst.tolerance = gst_tolerance;
  options.gst.max_iterations = gst_max_iterations;
  options.drift_threshold = drift_threshold;
  return options;
}

MomentSet SimConfig::analytic_moments() const {
  std::vector<double> m, n, u, t;
  for (const auto& s : species) {
    m.push_back(s.mass);
    n.push_back(s.density);
    u.push_back(s.velocity);
    t.push_back(s.temperature);
  }
  return MomentSet::from_scalar(std::move(m), std::move(n), std::move(u), std::move(t));
}

DistributionSet SimConfig::initial_distributions() const {
  const auto g = grid();
  std::vector<std::vector<double>> values;
  for (const auto& s : species) values.push_back(maxwellian(s.density, s.velocity, s.temperature / s.mass, g));
  return DistributionSet(g, std::move(values));
}

long SimConfig::step_count() const { return static_cast<long>(std::floor(t_end / dt + 1e-9)); }

void SimConfig::validate() const { validate_all(*this, nullptr); }

SimConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    const int line = e.mark.line >= 0 ? e.mark.line + 1 : 0;
    const int column = e.mark.column >= 0 ? e.mark.column + 1 : 0;
    throw ConfigError(source, line, column, "parse error: " + e.msg);
  }

  const Reader r(source);
  SimConfig c;
  c.source = source;
  c.name = source;
  Marks marks;

  if (!root.IsMap()) r.fail(root, "<root>", "expected a mapping at the top level");
  r.reject_unknown(root, "",
                   {"name", "mode", "species", "epsilon0", "log_lambda", "kappa", "grid", "time", "solver", "output"});

  if (root["name"]) c.name = r.text(root["name"], "name");
  if (root["mode"]) {
    const auto node = root["mode"];
    try {
      c.mode = parse_mode(r.text(node, "mode"));
    } catch (const std::invalid_argument& e) {
      r.fail(node, "mode", e.what());
    }
  }

  const auto species = root["species"];
  if (!species) r.fail(root, "species", "required key missing");
  if (!species.IsSequence() || species.size() == 0) r.fail(species, "species", "expected a non-empty list");
  for (std::size_t i = 0; i < species.size(); ++i) {
    const auto node = species[i];
    const auto key = fmt::format("species[{}]", i + 1);
    r.expect_map(node, key);
    r.reject_unknown(node, key, {"name", "mass", "charge", "density", "velocity", "temperature", "theta"});
    SpeciesConfig s;
    s.name = node["name"] ? r.text(node["name"], key + ".name") : fmt::format("species {}", i + 1);
    if (node["mass"]) s.mass = r.positive(node["mass"], key + ".mass");
    if (node["charge"]) s.charge = r.number(node["charge"], key + ".charge");
    if (node["density"]) s.density = r.positive(node["density"], key + ".density");
    if (node["velocity"]) s.velocity = r.number(node["velocity"], key + ".velocity");
    const bool has_t = static_cast<bool>(node["temperature"]);
    const bool has_theta = static_cast<bool>(node["theta"]);
    if (has_t == has_theta) r.fail(node, key, "exactly one of 'temperature' or 'theta' is required");
    if (has_t) {
      s.temperature = r.positive(node["temperature"], key + ".temperature");
    } else {
      s.temperature = s.mass * r.positive(node["theta"], key + ".theta");
    }
    c.species.push_back(s);
  }
  const std::size_t n = c.species.size();

  if (root["epsilon0"]) c.epsilon0 = r.positive(root["epsilon0"], "epsilon0");

  c.log_lambda.assign(n * n, 1.0);
  if (const auto node = root["log_lambda"]) {
    marks.log_lambda = where(node);
    if (node.IsScalar()) {
      c.log_lambda.assign(n * n, r.number(node, "log_lambda"));
    } else {
      c.log_lambda = square_table(r, node, "log_lambda", n);
    }
  }

  if (const auto node = root["kappa"]) {
    marks.kappa = where(node);
    if (node.IsScalar()) {
      c.kappa.kind = KappaConfig::Kind::Uniform;
      c.kappa.value = r.number(node, "kappa");
    } else {
      r.expect_map(node, "kappa");
      r.reject_unknown(node, "kappa", {"value", "scale", "table"});
      const int given = (node["value"] ? 1 : 0) + (node["scale"] ? 1 : 0) + (node["table"] ? 1 : 0);
      if (given != 1) r.fail(node, "kappa", "exactly one of 'value', 'scale' or 'table' is required");
      if (node["value"]) {
        c.kappa.kind = KappaConfig::Kind::Uniform;
        c.kappa.value = r.number(node["value"], "kappa.value");
        marks.kappa = where(node["value"]);
      } else if (node["scale"]) {
        c.kappa.kind = KappaConfig::Kind::Scaled;
        c.kappa.value = r.number(node["scale"], "kappa.scale");
        marks.kappa = where(node["scale"]);
      } else {
        c.kappa.kind = KappaConfig::Kind::Table;
        c.kappa.table = square_table(r, node["table"], "kappa.table", n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) marks.kappa_entries.push_back(where(node["table"][i][j]));
        }
      }
    }
  } else {
    r.fail(root, "kappa", "required key missing");
  }

  if (const auto node = root["grid"]) {
    r.expect_map(node, "grid");
    r.reject_unknown(node, "grid", {"v_max", "cells"});
    if (node["v_max"]) c.v_max = r.positive(node["v_max"], "grid.v_max");
    if (node["cells"]) c.cells = r.integer(node["cells"], "grid.cells", 4);
  }
  if (const auto node = root["time"]) {
    r.expect_map(node, "time");
    r.reject_unknown(node, "time", {"dt", "t_end", "reference_dt"});
    if (node["dt"]) c.dt = r.positive(node["dt"], "time.dt");
    if (node["t_end"]) {
      c.t_end = r.number(node["t_end"], "time.t_end");
      if (c.t_end < 0.0) r.fail(node["t_end"], "time.t_end", "time.t_end >= 0 violated");
    }
    if (node["reference_dt"]) c.reference_dt = r.positive(node["reference_dt"], "time.reference_dt");
  }
  if (const auto node = root["solver"]) {
    r.expect_map(node, "solver");
    r.reject_unknown(node, "solver", {"gst_tolerance", "gst_max_iterations", "drift_threshold"});
    if (node["gst_tolerance"]) c.gst_tolerance = r.positive(node["gst_tolerance"], "solver.gst_tolerance");
    if (node["gst_max_iterations"]) {
      c.gst_max_iterations = r.integer(node["gst_max_iterations"], "solver.gst_max_iterations", 1);
    }
    if (node["drift_threshold"]) c.drift_threshold = r.positive(node["drift_threshold"], "solver.drift_threshold");
  }
  if (const auto node = root["output"]) {
    r.expect_map(node, "output");
    r.reject_unknown(node, "output", {"csv", "plot", "stride"});
    if (node["csv"]) c.csv = r.text(node["csv"], "output.csv");
    if (node["plot"]) c.plot = r.text(node["plot"], "output.plot");
    if (node["stride"]) c.stride = r.integer(node["stride"], "output.stride", 1);
  }

  validate_all(c, &marks);
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

namespace {

SimConfig base_preset(const std::string& name) {
  SimConfig c;
  c.name = name;
  c.source = "preset " + name;
  c.epsilon0 = 1.0;
  c.v_max = 4.0;
  c.cells = 80;
  c.dt = 0.2;
  c.t_end = 20.0;
  c.log_lambda.assign(4, 1.0);
  return c;
}

}  // namespace

SimConfig preset(const std::string& name) {
  if (name == "paper-test-1") {
    auto c = base_preset(name);
    c.species = {{"species 1", 1.0, 1.0, 1.0, 0.5, 0.25}, {"species 2", 1.0, 1.0, 1.0, -0.25, 0.125}};
    c.kappa = {KappaConfig::Kind::Uniform, 2.0, {}};
    c.validate();
    return c;
  }
  if (name == "paper-test-2") {
    auto c = base_preset(name);
    // theta = (0.25, 0.125) as in the first test, so T_1 = m_1 theta_1 = 0.5.
    c.species = {{"species 1", 2.0, 1.0, 1.0, 0.5, 0.5}, {"species 2", 1.0, 1.0, 1.0, -0.25, 0.125}};
    c.kappa = {KappaConfig::Kind::Uniform, 3.0, {}};
    c.validate();
    return c;
  }
  throw ConfigError("preset " + name, 0, 0, "unknown preset (try 'presets')");
}

std::vector<std::string> preset_names() { return {"paper-test-1", "paper-test-2"}; }

std::string preset_description(const std::string& name) {
  if (name == "paper-test-1") return "equal masses m=(1,1), kappa=2, u=(0.5,-0.25), theta=(0.25,0.125)";
  if (name == "paper-test-2") return "mass ratio m=(2,1), kappa=3, u=(0.5,-0.25), theta=(0.25,0.125)";
  throw ConfigError("preset " + name, 0, 0, "unknown preset");
}

SimConfig resolve_config(const std::string& preset_or_path) {
  for (const auto& name : preset_names()) {
    if (name == preset_or_path) return preset(name);
  }
  return load_config(preset_or_path);
}

}  // namespace mlb::cli
