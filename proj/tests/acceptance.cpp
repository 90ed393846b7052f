// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mlb/mlb.hpp"
#include "mlb_cli/config.hpp"
#include "mlb_cli/runner.hpp"
#include "mlb_cli/verify.hpp"
#include "support/dense_oracles.hpp"
#include "support/test_support.hpp"

using namespace mlb;

namespace {

int failures = 0;

void report(int id, bool passed, const std::string& title, const std::string& detail) {
  if (!passed) ++failures;
  fmt::print("[{}] {:>2}. {}: {}\n", passed ? "PASS" : "FAIL", id, title, detail);
}

void note(const std::string& title, bool passed, const std::string& detail) {
  fmt::print("       (supplementary, not gating) {}: {} {}\n", title, passed ? "pass" : "fail", detail);
}

struct Terminal {
  double u_error = 0.0;
  double t_error = 0.0;
  double seconds = 0.0;
  bool failed = false;
};

Terminal terminal_error(cli::SimConfig config, double u_inf, double t_inf) {
  const auto s = cli::run_simulation(config);
  Terminal out;
  out.seconds = s.wall_seconds;
  out.failed = s.failed;
  const auto& f = s.final_sample();
  for (std::size_t i = 0; i < f.velocity.size(); ++i) {
    out.u_error = std::max(out.u_error, std::abs(f.velocity[i] - u_inf));
    out.t_error = std::max(out.t_error, std::abs(f.temperature[i] - t_inf));
  }
  return out;
}

cli::SimConfig with(cli::SimConfig c, cli::Mode mode, double t_end) {
  c.mode = mode;
  c.t_end = t_end;
  return c;
}

struct Preset {
  const char* name;
  double u_inf;
  double t_inf;
};

constexpr Preset kPresets[] = {{"paper-test-1", 0.125, 0.328125}, {"paper-test-2", 0.25, 0.5}};

void steady_state(int id, const Preset& p) {
  const auto config = cli::preset(p.name);
  const auto r = terminal_error(config, p.u_inf, p.t_inf);
  const bool ok = !r.failed && r.u_error <= 5e-3 && r.t_error <= 5e-3 && r.seconds <= 1.0;
  report(id, ok, fmt::format("{} grid run to t = {}", p.name, config.t_end),
         fmt::format("max |u - {}| = {:.3e}, max |T - {}| = {:.3e} (tol 5e-3), runtime {:.3f} s (limit 1 s)", p.u_inf,
                     r.u_error, p.t_inf, r.t_error, r.seconds));
  const auto longer = terminal_error(with(config, cli::Mode::Grid, 200.0), p.u_inf, p.t_inf);
  note(fmt::format("{} grid run to t = 200", p.name), longer.u_error <= 5e-3 && longer.t_error <= 5e-3,
       fmt::format("u err {:.3e}, T err {:.3e}", longer.u_error, longer.t_error));
}

void moments_mode() {
  std::string detail;
  bool ok = true;
  std::string extra;
  bool extra_ok = true;
  for (const auto& p : kPresets) {
    const auto config = cli::preset(p.name);
    const auto r = terminal_error(with(config, cli::Mode::Moments, config.t_end), p.u_inf, p.t_inf);
    ok = ok && !r.failed && r.u_error <= 1e-6 && r.t_error <= 1e-6;
    detail += fmt::format("{}: u err {:.3e}, T err {:.3e}; ", p.name, r.u_error, r.t_error);
    const auto l = terminal_error(with(config, cli::Mode::Moments, 200.0), p.u_inf, p.t_inf);
    extra_ok = extra_ok && l.u_error <= 1e-6 && l.t_error <= 1e-6;
    extra += fmt::format("{}: u err {:.3e}, T err {:.3e}; ", p.name, l.u_error, l.t_error);
  }
  report(3, ok, "moments mode, both presets, t = 20", detail + "tol 1e-6");
  note("moments mode, both presets, t = 200", extra_ok, extra);
}

void conservation_and_entropy() {
  double mass = 0.0, momentum = 0.0, energy = 0.0;
  for (const auto& p : kPresets) {
    const auto s = cli::run_simulation(cli::preset(p.name));
    mass = std::max(mass, s.max_mass_residual);
    momentum = std::max(momentum, s.max_momentum_residual);
    energy = std::max(energy, s.max_energy_residual);
  }
  report(4, mass <= 1e-12 && momentum <= 1e-10 && energy <= 1e-10, "conservation per step, both presets",
         fmt::format("mass {:.2e} (tol 1e-12), momentum {:.2e}, energy {:.2e} (tol 1e-10)", mass, momentum, energy));

  double worst = -INFINITY;
  bool ok = true;
  for (const auto& p : kPresets) {
    for (const double dt : {0.2, 0.1, 0.05}) {
      auto c = cli::preset(p.name);
      c.dt = dt;
      const auto s = cli::run_simulation(c);
      ok = ok && !s.failed && s.max_entropy_increase <= 0.0;
      worst = std::max(worst, s.max_entropy_increase);
    }
  }
  report(5, ok, "entropy non-increasing, both presets, dt in {0.2, 0.1, 0.05}",
         fmt::format("largest H(t_n+1) - H(t_n) = {:.3e}", worst));
}

void random_ensemble() {
  test::Rng rng(2024);
  double match = 0.0, symmetry = 0.0;
  int states = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    test::MixtureRanges ranges;
    ranges.min_species = 2;
    ranges.max_species = 4;
    ranges.dim = rng.integer(1, 3);
    const auto mix = test::random_mixture(rng, ranges);
    const auto c = assemble_coefficients(mix.species, mix.kappa, mix.moments);
    match = std::max(match, cli::matching_error(mix.moments, mix.species, c));
    for (const auto& r : verify_symmetries(c)) symmetry = std::max(symmetry, r.max_relative());
    ++states;
  }
  report(6, match <= 1e-12, "matching identity, random states",
         fmt::format("{} states, worst relative error {:.2e} (tol 1e-12)", states, match));
  report(7, symmetry <= 1e-12, "symmetry residuals, same ensemble",
         fmt::format("{} states, worst relative residual {:.2e} (tol 1e-12)", states, symmetry));
}

void oracle_equivalence() {
  test::Rng rng(77);
  double gst = 0.0;
  int converged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    test::MixtureRanges ranges;
    ranges.dim = rng.integer(1, 3);
    const auto mix = test::random_mixture(rng, ranges);
    const double dt = rng.uniform(0.01, 1.0);
    const auto r = gst_moment_update(mix.moments, mix.species, mix.kappa, dt);
    const auto ref = test::newton_backward_euler(mix.species, mix.kappa, mix.moments, dt);
    if (ref.converged) ++converged;
    const auto d = static_cast<std::size_t>(ranges.dim);
    for (std::size_t i = 0; i < mix.moments.size(); ++i) {
      for (std::size_t a = 0; a < d; ++a) gst = std::max(gst, std::abs(r.moments.velocity(i)[a] - ref.velocity[i * d + a]));
      gst = std::max(gst, std::abs(r.moments.temperature(i) - ref.temperature[i]));
    }
  }

  double linear = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int cells = rng.integer(8, 160);
    const auto grid = build_grid(rng.uniform(2.0, 6.0), cells);
    std::vector<CollisionTerm> terms;
    const int count = rng.integer(1, 4);
    for (int j = 0; j < count; ++j) {
      const double theta = rng.uniform(0.05, 2.0);
      terms.push_back({rng.uniform(0.0, 3.0), theta,
                       assemble_tridiagonal_from_log(log_maxwellian(1.0, rng.uniform(-1, 1), theta, grid))});
    }
    std::vector<double> f(static_cast<std::size_t>(cells));
    for (auto& x : f) x = rng.uniform(1e-3, 1.0);
    const double dt = rng.uniform(0.01, 1.0);
    const auto out = implicit_collision_solve(f, terms, dt, grid);

    const double scale = dt / (grid.width() * grid.width());
    std::vector<double> sub(cells - 1, 0.0), super(cells - 1, 0.0), diag(cells, 1.0);
    for (const auto& t : terms) {
      const double w = scale * t.frequency * t.theta;
      for (int k = 0; k < cells; ++k) diag[k] += w * t.shape.diag[k];
      for (int k = 0; k + 1 < cells; ++k) {
        sub[k] -= w * t.shape.lower[k];
        super[k] -= w * t.shape.upper[k];
      }
    }
    const auto ref = test::dense_tridiagonal_solve(sub, diag, super, f);
    double norm = 0.0, diff = 0.0;
    for (int k = 0; k < cells; ++k) {
      norm = std::max(norm, std::abs(ref[k]));
      diff = std::max(diff, std::abs(out[k] - ref[k]));
    }
    linear = std::max(linear, diff / norm);
  }
  report(8, gst <= 1e-10 && converged == 100 && linear <= 1e-12, "solver oracles",
         fmt::format("GST vs Newton on 100 states: {:.2e} (tol 1e-10, {} Newton solves converged); "
                     "implicit solve vs dense LU on 100 systems: {:.2e} relative (tol 1e-12)",
                     gst, converged, linear));
}

void time_order() {
  const auto config = cli::preset("paper-test-1");
  const auto species = config.species_set();
  const auto kappa = config.kappa_table();
  const auto initial = make_initial_state(config.initial_distributions(), species.masses());
  // Fine RK4 reference from the same discrete initial moments, sampled every 0.2.
  const auto ref = reference_integrate(initial.moments, species, kappa, 20.0, 1e-3, 200);

  std::vector<double> errors;
  const std::vector<double> steps{0.2, 0.1, 0.05, 0.025};
  for (const double dt : steps) {
    const int per_sample = static_cast<int>(std::lround(0.2 / dt));
    auto state = initial;
    double worst = 0.0;
    for (int n = 1; n <= 100 * per_sample; ++n) {
      state = full_step(state, species, kappa, dt).state;
      if (n % per_sample != 0) continue;
      const auto& r = ref.states[static_cast<std::size_t>(n / per_sample)];
      for (std::size_t i = 0; i < 2; ++i) {
        worst = std::max({worst, std::abs(state.moments.velocity(i)[0] - r.velocity(i)[0]),
                          std::abs(state.moments.temperature(i) - r.temperature(i))});
      }
    }
    errors.push_back(worst);
  }
  bool ok = true;
  std::string orders;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const double p = std::log2(errors[k - 1] / errors[k]);
    ok = ok && p >= 0.8 && p <= 1.2;
    orders += fmt::format("{}{:.3f}", k > 1 ? ", " : "", p);
  }
  report(9, ok, "first-order time accuracy of the moment trajectory, test 1",
         fmt::format("max errors {:.3e}, {:.3e}, {:.3e}, {:.3e}; observed orders {} (range [0.8, 1.2])", errors[0],
                     errors[1], errors[2], errors[3], orders));
}

MixtureCoefficients two_species(double m1, double m2, double n1, double n2, double lambda12, double lambda21,
                                const MixtureWeights& forward) {
  MixtureCoefficients c({m1, m2}, {n1, n2});
  const auto reverse =
      partner_coefficients(forward, lambda12, lambda21, SpeciesSpec{m1, 1.0, n1, ""}, SpeciesSpec{m2, 1.0, n2, ""});
  auto& p12 = c.at(0, 1);
  p12.lambda = lambda12;
  p12.alpha = forward.alpha;
  p12.beta = forward.beta;
  p12.gamma = forward.gamma;
  p12.delta = m1 * n1 * lambda12 * (1.0 - forward.alpha);
  auto& p21 = c.at(1, 0);
  p21.lambda = lambda21;
  p21.alpha = reverse.alpha;
  p21.beta = reverse.beta;
  p21.gamma = reverse.gamma;
  p21.delta = m2 * n2 * lambda21 * (1.0 - reverse.alpha);
  return c;
}

void pirner_sets() {
  test::Rng rng(4242);
  int accepted = 0, holds = 0;
  while (accepted < 1000) {
    const double m1 = rng.uniform(0.5, 4), m2 = rng.uniform(0.5, 4), n1 = rng.uniform(0.2, 3),
                 n2 = rng.uniform(0.2, 3), lambda21 = rng.uniform(0.01, 2);
    const double eps = rng.uniform(0.0, std::min(1.0, m2 / m1));
    const double floor = eps / (1 + eps);
    const double alpha = rng.uniform(floor, 1.0);
    const double beta = rng.uniform(floor, 1.0);
    const double gamma = rng.uniform(0.0, m1 * (1 - alpha));
    const auto c = two_species(m1, m2, n1, n2, eps * n2 * lambda21 / n1, lambda21, {alpha, beta, gamma});
    const auto p = check_pirner(c);
    if (!p.all_conditions() || !p.conservation_consistent) continue;
    ++accepted;
    if (check_assumption1(c).holds) ++holds;
  }
  report(10, holds == accepted, "two-species sufficient conditions imply the weight bounds",
         fmt::format("{} of {} random admissible sets satisfy the weight bounds", holds, accepted));
}

}  // namespace

int main() {
  steady_state(1, kPresets[0]);
  steady_state(2, kPresets[1]);
  moments_mode();
  conservation_and_entropy();
  random_ensemble();
  oracle_equivalence();
  time_order();
  pirner_sets();
  fmt::print("{} of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
