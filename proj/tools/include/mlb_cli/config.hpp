#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlb/distribution.hpp"
#include "mlb/gst.hpp"
#include "mlb/implicit_step.hpp"
#include "mlb/mixture.hpp"
#include "mlb/moments.hpp"
#include "mlb/species.hpp"
#include "mlb/velocity_grid.hpp"

namespace mlb::cli {

/// Configuration problem, located at `source:line:column` when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, int column, const std::string& message);
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

enum class Mode { Grid, Moments };

[[nodiscard]] const char* to_string(Mode mode);
/// Throws std::invalid_argument for anything but "grid" or "moments".
[[nodiscard]] Mode parse_mode(const std::string& text);

struct SpeciesConfig {
  std::string name;
  double mass = 1.0;
  double charge = 1.0;
  double density = 1.0;
  double velocity = 0.0;
  /// Initial temperature T = m theta.
  double temperature = 1.0;
};

struct KappaConfig {
  enum class Kind { Uniform, Scaled, Table };
  Kind kind = Kind::Uniform;
  /// Uniform value, or the scale factor c in kappa_ij = c max(mu_ij, mu_ji).
  double value = 2.0;
  std::vector<double> table;
};

struct SimConfig {
  std::string name;
  std::string source;
  Mode mode = Mode::Grid;

  std::vector<SpeciesConfig> species;
  double epsilon0 = 1.0;
  /// Row-major N x N.
  std::vector<double> log_lambda;
  KappaConfig kappa;

  double v_max = 4.0;
  int cells = 80;

  double dt = 0.2;
  double t_end = 20.0;
  /// Step of the explicit integrator used in moments mode.
  double reference_dt = 1e-3;

  double gst_tolerance = 1e-12;
  int gst_max_iterations = 200;
  double drift_threshold = 1e-4;

  std::string csv = "trajectory.csv";
  std::string plot = "relaxation.svg";
  int stride = 1;

  [[nodiscard]] SpeciesSet species_set() const;
  [[nodiscard]] KappaTable kappa_table() const;
  [[nodiscard]] VelocityGrid grid() const;
  [[nodiscard]] SolverOptions solver_options() const;
  /// Moments straight from the configured (n, u, T) values.
  [[nodiscard]] MomentSet analytic_moments() const;
  /// Discrete Maxwellians with the configured (n, u, T/m).
  [[nodiscard]] DistributionSet initial_distributions() const;
  /// Number of time steps: floor(t_end / dt) with a small tolerance.
  [[nodiscard]] long step_count() const;

  /// Re-run every positivity and kappa >= mu check. Throws ConfigError.
  void validate() const;
};

/// Parse YAML text. `source` names the input in error messages.
SimConfig parse_config(const std::string& text, const std::string& source);

/// Read and validate a YAML configuration file.
SimConfig load_config(const std::filesystem::path& path);

/// Built-in configurations; throws ConfigError for unknown names.
SimConfig preset(const std::string& name);
std::vector<std::string> preset_names();
/// One-line description of a preset.
std::string preset_description(const std::string& name);

/// A preset name if it is one, otherwise a file path.
SimConfig resolve_config(const std::string& preset_or_path);

}  // namespace mlb::cli
