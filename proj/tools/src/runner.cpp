#include "mlb_cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mlb/error.hpp"
#include "mlb/implicit_step.hpp"
#include "mlb_cli/plot.hpp"

namespace mlb::cli {

namespace {

struct Totals {
  double momentum = 0.0;
  double energy = 0.0;
};

Totals totals(const MomentSet& m) { return {m.total_momentum().front(), m.total_energy()}; }

void fill_totals(Sample& s, const MomentSet& initial, const MomentSet& current) {
  const auto t = totals(current);
  s.total_momentum = t.momentum;
  s.total_energy = t.energy;
  s.momentum_residual = relative_momentum_change(initial, current);
  s.energy_residual = relative_energy_change(initial, current);
}

Sample sample_from_moments(double time, const MomentSet& m) {
  Sample s;
  s.time = time;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s.velocity.push_back(m.velocity(i).front());
    s.temperature.push_back(m.temperature(i));
    s.density.push_back(m.density(i));
    s.energy.push_back(m.energy(i));
  }
  return s;
}

Sample sample_from_distributions(double time, const std::vector<SpeciesMoments>& moments) {
  Sample s;
  s.time = time;
  for (const auto& m : moments) {
    s.velocity.push_back(m.velocity);
    s.temperature.push_back(m.temperature);
    s.density.push_back(m.density);
    s.energy.push_back(m.energy);
  }
  return s;
}

class CsvSink {
 public:
  CsvSink(const std::filesystem::path& path, std::size_t species) {
    if (path.empty()) return;
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << csv_header(species) << '\n' << std::flush;
  }
  void write(const Sample& s) {
    if (out_.is_open()) out_ << csv_row(s) << '\n' << std::flush;
  }

 private:
  std::ofstream out_;
};

void run_grid(const SimConfig& config, RunSummary& summary, CsvSink& csv, const SpeciesSet& species,
              const KappaTable& kappa, long stride) {
  const auto masses = species.masses();
  auto state = make_initial_state(config.initial_distributions(), masses);
  const auto initial_moments = state.moments;
  const auto options = config.solver_options();
  std::vector<double> initial_mass;
  for (std::size_t i = 0; i < species.size(); ++i) initial_mass.push_back(state.distributions.mass_sum(i));

  std::vector<SpeciesMoments> f_moments;
  for (std::size_t i = 0; i < species.size(); ++i) {
    f_moments.push_back(moments_of(state.distributions.species(i), state.distributions.grid(), masses[i]));
  }
  auto first = sample_from_distributions(0.0, f_moments);
  first.entropy = entropy(state.distributions);
  fill_totals(first, initial_moments, state.moments);
  summary.samples.push_back(first);
  csv.write(first);
  summary.max_entropy_increase = -std::numeric_limits<double>::infinity();

  for (long step = 1; step <= summary.steps_requested; ++step) {
    StepResult result = [&] {
      try {
        return full_step(state, species, kappa, config.dt, options);
      } catch (const SolverError& e) {
        throw SolverError(e.kind(), fmt::format("step {} (t = {}): {}", step, step * config.dt, e.what()),
                          e.species(), static_cast<int>(step));
      }
    }();
    state = std::move(result.state);
    state.time = static_cast<double>(step) * config.dt;
    const auto& d = result.diagnostics;

    summary.steps_completed = step;
    summary.max_entropy_increase = std::max(summary.max_entropy_increase, d.entropy_after - d.entropy_before);
    for (const double m : d.mass_drift) summary.max_mass_residual = std::max(summary.max_mass_residual, m);
    summary.max_momentum_residual = std::max(summary.max_momentum_residual, d.momentum_drift);
    summary.max_energy_residual = std::max(summary.max_energy_residual, d.energy_drift);
    summary.max_moment_gap = std::max(summary.max_moment_gap, d.moment_gap);
    summary.max_gst_iterations = std::max(summary.max_gst_iterations, d.gst_iterations);
    if (d.drift_exceeded) ++summary.drift_warnings;

    if (step % stride != 0) continue;
    auto s = sample_from_distributions(state.time, d.distribution_moments);
    s.entropy = d.entropy_after;
    s.gst_iterations = d.gst_iterations;
    s.moment_gap = d.moment_gap;
    for (std::size_t i = 0; i < species.size(); ++i) {
      s.mass_residual =
          std::max(s.mass_residual, std::abs(state.distributions.mass_sum(i) - initial_mass[i]) / initial_mass[i]);
    }
    fill_totals(s, initial_moments, state.moments);
    summary.samples.push_back(s);
    csv.write(s);
  }
}

void run_moments(const SimConfig& config, RunSummary& summary, CsvSink& csv, const SpeciesSet& species,
                 const KappaTable& kappa, long stride) {
  auto state = config.analytic_moments();
  const auto initial = state;
  const double substeps = std::max(1.0, std::ceil(config.dt / config.reference_dt - 1e-9));
  const double h = config.dt / substeps;

  auto first = sample_from_moments(0.0, state);
  first.entropy = std::numeric_limits<double>::quiet_NaN();
  fill_totals(first, initial, state);
  summary.samples.push_back(first);
  csv.write(first);

  for (long step = 1; step <= summary.steps_requested; ++step) {
    auto previous = state;
    try {
      state = reference_integrate(state, species, kappa, config.dt, h, std::numeric_limits<int>::max())
                  .final_state();
    } catch (const SolverError& e) {
      throw SolverError(e.kind(), fmt::format("step {} (t = {}): {}", step, step * config.dt, e.what()),
                        e.species(), static_cast<int>(step));
    }
    summary.steps_completed = step;
    summary.max_momentum_residual =
        std::max(summary.max_momentum_residual, relative_momentum_change(previous, state));
    summary.max_energy_residual = std::max(summary.max_energy_residual, relative_energy_change(previous, state));

    if (step % stride != 0) continue;
    auto s = sample_from_moments(static_cast<double>(step) * config.dt, state);
    s.entropy = std::numeric_limits<double>::quiet_NaN();
    fill_totals(s, initial, state);
    summary.samples.push_back(s);
    csv.write(s);
  }
  summary.max_entropy_increase = std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string csv_header(std::size_t species) {
  std::string header = "t";
  for (std::size_t i = 1; i <= species; ++i) header += fmt::format(",u_{0},T_{0},n_{0},E_{0}", i);
  header += ",H,total_momentum,total_energy,gst_iterations,mass_residual,momentum_residual,energy_residual,moment_gap";
  return header;
}

std::string csv_row(const Sample& s) {
  std::string row = fmt::format("{:.17g}", s.time);
  for (std::size_t i = 0; i < s.velocity.size(); ++i) {
    row += fmt::format(",{:.17g},{:.17g},{:.17g},{:.17g}", s.velocity[i], s.temperature[i], s.density[i],
                       s.energy[i]);
  }
  row += fmt::format(",{:.17g},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g}", s.entropy, s.total_momentum,
                     s.total_energy, s.gst_iterations, s.mass_residual, s.momentum_residual, s.energy_residual,
                     s.moment_gap);
  return row;
}

RunSummary run_simulation(const SimConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  RunSummary summary;
  summary.mode = config.mode;
  summary.steps_requested = config.step_count();
  summary.limit = conserved_state(config.analytic_moments());

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    summary.csv_path = out_dir / config.csv;
    if (!config.plot.empty()) summary.plot_path = out_dir / config.plot;
  }

  const auto species = config.species_set();
  const auto kappa = config.kappa_table();
  CsvSink csv(summary.csv_path, species.size());
  try {
    if (config.mode == Mode::Grid) {
      run_grid(config, summary, csv, species, kappa, config.stride);
    } else {
      run_moments(config, summary, csv, species, kappa, config.stride);
    }
  } catch (const SolverError& e) {
    summary.failed = true;
    summary.failure = e.what();
  }

  if (config.mode == Mode::Grid && !summary.samples.empty()) {
    // Limits of the discrete initial data, which is what the grid run conserves.
    std::vector<double> m, n, u, t;
    const auto& s0 = summary.samples.front();
    for (std::size_t i = 0; i < species.size(); ++i) {
      m.push_back(species.mass(i));
      n.push_back(s0.density[i]);
      u.push_back(s0.velocity[i]);
      t.push_back(s0.temperature[i]);
    }
    summary.limit = conserved_state(MomentSet::from_scalar(m, n, u, t));
  }

  if (!summary.plot_path.empty() && summary.samples.size() > 1) {
    std::vector<std::string> names;
    for (const auto& s : config.species) names.push_back(s.name);
    std::ofstream svg(summary.plot_path);
    if (!svg) throw std::runtime_error("cannot write " + summary.plot_path.string());
    svg << relaxation_svg(config.name, summary.samples, summary.limit, names);
  } else {
    summary.plot_path.clear();
  }

  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

void print_summary(std::ostream& out, const SimConfig& config, const RunSummary& summary) {
  fmt::print(out, "{} ({} mode): {} of {} steps, dt = {}, t = {}\n", config.name, to_string(summary.mode),
             summary.steps_completed, summary.steps_requested, config.dt,
             summary.samples.empty() ? 0.0 : summary.final_sample().time);
  if (!summary.samples.empty()) {
    const auto& s = summary.final_sample();
    for (std::size_t i = 0; i < s.velocity.size(); ++i) {
      fmt::print(out, "  {:<12} u = {:<+22.15g} T = {:<22.15g} (limit u = {:.15g}, T = {:.15g})\n",
                 config.species[i].name, s.velocity[i], s.temperature[i], summary.limit.velocity.front(),
                 summary.limit.temperature);
    }
  }
  if (summary.mode == Mode::Grid) {
    fmt::print(out, "  max entropy increase per step: {:.3e}\n", summary.max_entropy_increase);
    fmt::print(out, "  max GST iterations: {}\n", summary.max_gst_iterations);
    fmt::print(out, "  max moment gap (f vs moment state): {:.3e}, {} step(s) above {:.1e}\n",
               summary.max_moment_gap, summary.drift_warnings, config.drift_threshold);
  }
  fmt::print(out, "  max conservation residual per step: mass {:.3e}, momentum {:.3e}, energy {:.3e}\n",
             summary.max_mass_residual, summary.max_momentum_residual, summary.max_energy_residual);
  fmt::print(out, "  wall time: {:.3f} s\n", summary.wall_seconds);
  if (!summary.csv_path.empty()) fmt::print(out, "  csv: {}\n", summary.csv_path.string());
  if (!summary.plot_path.empty()) fmt::print(out, "  plot: {}\n", summary.plot_path.string());
  if (summary.failed) fmt::print(out, "  FAILED: {}\n", summary.failure);
}

}  // namespace mlb::cli
