#include "mlb/implicit_step.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mlb/error.hpp"
#include "mlb/maxwellian.hpp"

namespace mlb {

std::vector<double> implicit_collision_solve(std::span<const double> f, std::span<const CollisionTerm> terms,
                                             double dt, const VelocityGrid& grid) {
  const auto n = static_cast<std::size_t>(grid.size());
  if (f.size() != n) throw std::invalid_argument("implicit_collision_solve: distribution does not match grid");
  const double scale = dt / (grid.width() * grid.width());

  std::vector<double> diag(n, 1.0);
  std::vector<double> sub(n - 1, 0.0);
  std::vector<double> super(n - 1, 0.0);
  for (const auto& term : terms) {
    if (term.shape.diag.size() != n) {
      throw std::invalid_argument("implicit_collision_solve: operator does not match grid");
    }
    const double w = scale * term.frequency * term.theta;
    if (w == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) diag[k] += w * term.shape.diag[k];
    for (std::size_t k = 0; k + 1 < n; ++k) {
      sub[k] -= w * term.shape.lower[k];
      super[k] -= w * term.shape.upper[k];
    }
  }
  return solve_tridiagonal(sub, diag, super, f);
}

std::vector<CollisionTerm> collision_terms(const MomentSet& moments, const MixtureCoefficients& coefficients,
                                           std::size_t i, const VelocityGrid& grid) {
  if (moments.dim() != 1) throw std::invalid_argument("collision_terms: gridded path supports d = 1 only");
  std::vector<CollisionTerm> terms;
  terms.reserve(moments.size());
  for (std::size_t j = 0; j < moments.size(); ++j) {
    const auto mix = mixture_parameters(moments, coefficients, i, j);
    const auto log_m = log_maxwellian(moments.density(i), mix.velocity.front(), mix.theta, grid);
    terms.push_back({coefficients.at(i, j).lambda, mix.theta, assemble_tridiagonal_from_log(log_m)});
  }
  return terms;
}

KineticState make_initial_state(DistributionSet distributions, std::span<const double> masses) {
  auto moments = distributions.moments(masses);
  return KineticState{std::move(distributions), std::move(moments), 0.0};
}

double relative_momentum_change(const MomentSet& before, const MomentSet& after) {
  const auto p0 = before.total_momentum();
  const auto p1 = after.total_momentum();
  double scale = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    scale += before.mass_density(i) * std::sqrt(before.speed_squared(i));
  }
  double change = 0.0;
  for (std::size_t a = 0; a < p0.size(); ++a) {
    total = std::max(total, std::abs(p0[a]));
    change = std::max(change, std::abs(p1[a] - p0[a]));
  }
  scale = std::max({scale, total, 1e-300});
  return change / scale;
}

double relative_energy_change(const MomentSet& before, const MomentSet& after) {
  const double e0 = before.total_energy();
  return std::abs(after.total_energy() - e0) / std::max(std::abs(e0), 1e-300);
}

StepResult full_step(const KineticState& state, const SpeciesSet& species, const KappaTable& kappa, double dt,
                     const SolverOptions& options) {
  const auto& grid = state.distributions.grid();
  const std::size_t n_species = state.moments.size();
  if (state.distributions.species_count() != n_species || species.size() != n_species) {
    throw std::invalid_argument("full_step: species counts of state and species set differ");
  }

  auto gst = gst_moment_update(state.moments, species, kappa, dt, options.gst);

  StepDiagnostics diag;
  diag.gst_iterations = gst.iterations;
  diag.gst_change = gst.change;
  diag.momentum_drift = relative_momentum_change(state.moments, gst.moments);
  diag.energy_drift = relative_energy_change(state.moments, gst.moments);
  diag.entropy_before = entropy(state.distributions);

  std::vector<std::vector<double>> updated(n_species);
  for (std::size_t i = 0; i < n_species; ++i) {
    const auto terms = collision_terms(gst.moments, gst.coefficients, i, grid);
    updated[i] = implicit_collision_solve(state.distributions.species(i), terms, dt, grid);
    for (std::size_t k = 0; k < updated[i].size(); ++k) {
      if (!(updated[i][k] > 0.0)) {
        throw SolverError(SolverError::Kind::NonPositiveDistribution,
                          "full_step: species " + std::to_string(i + 1) + " has non-positive value " +
                              std::to_string(updated[i][k]) + " at cell " + std::to_string(k),
                          static_cast<int>(i));
      }
    }
  }

  DistributionSet next(grid, std::move(updated));
  for (std::size_t i = 0; i < n_species; ++i) {
    const double before = state.distributions.mass_sum(i);
    diag.mass_drift.push_back(std::abs(next.mass_sum(i) - before) / before);
    const auto m = moments_of(next.species(i), grid, state.moments.mass(i));
    const double u = gst.moments.velocity(i).front();
    const double t = gst.moments.temperature(i);
    const double speed_scale = std::max(std::abs(u), std::sqrt(t / state.moments.mass(i)));
    diag.moment_gap = std::max({diag.moment_gap, std::abs(m.velocity - u) / speed_scale, std::abs(m.temperature - t) / t});
    diag.distribution_moments.push_back(m);
  }
  diag.entropy_after = entropy(next);
  diag.drift_exceeded = diag.moment_gap > options.drift_threshold;
  if (diag.drift_exceeded && options.fail_on_drift) {
    throw SolverError(SolverError::Kind::MomentDrift,
                      "full_step: moments of f drifted from the moment state by " + std::to_string(diag.moment_gap));
  }

  return StepResult{KineticState{std::move(next), std::move(gst.moments), state.time + dt}, std::move(diag)};
}

}  // namespace mlb
