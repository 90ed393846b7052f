#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlb/moment_dynamics.hpp"
#include "mlb_cli/config.hpp"

namespace mlb::cli {

/// One CSV row.
struct Sample {
  double time = 0.0;
  std::vector<double> velocity;
  std::vector<double> temperature;
  std::vector<double> density;
  std::vector<double> energy;
  /// NaN in moments mode.
  double entropy = 0.0;
  double total_momentum = 0.0;
  double total_energy = 0.0;
  int gst_iterations = 0;
  /// Cumulative relative drifts against t = 0 (mass is the worst species).
  double mass_residual = 0.0;
  double momentum_residual = 0.0;
  double energy_residual = 0.0;
  /// Relative gap between the moments of f and the moment state (grid mode).
  double moment_gap = 0.0;
};

struct RunSummary {
  Mode mode = Mode::Grid;
  long steps_completed = 0;
  long steps_requested = 0;
  std::vector<Sample> samples;
  EquilibriumState limit;
  /// Largest H(t_{n+1}) - H(t_n) over all steps (grid mode; may be negative).
  double max_entropy_increase = 0.0;
  /// Largest per-step relative changes.
  double max_mass_residual = 0.0;
  double max_momentum_residual = 0.0;
  double max_energy_residual = 0.0;
  double max_moment_gap = 0.0;
  int max_gst_iterations = 0;
  long drift_warnings = 0;
  bool failed = false;
  std::string failure;
  std::filesystem::path csv_path;
  std::filesystem::path plot_path;
  double wall_seconds = 0.0;

  /// Final sample (grid mode: moments of f; moments mode: ODE state).
  [[nodiscard]] const Sample& final_sample() const { return samples.back(); }
};

/// Run a simulation. With an empty `out_dir` nothing is written. Solver
/// failures are reported in the summary (CSV rows up to the failure are kept).
RunSummary run_simulation(const SimConfig& config, const std::filesystem::path& out_dir = {});

/// CSV header for N species.
std::string csv_header(std::size_t species);
/// One CSV line, 17 significant digits.
std::string csv_row(const Sample& sample);

void print_summary(std::ostream& out, const SimConfig& config, const RunSummary& summary);

}  // namespace mlb::cli
