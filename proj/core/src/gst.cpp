#include "mlb/gst.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dense_solve.hpp"
#include "mlb/error.hpp"

namespace mlb {

namespace {

double exchange_weight(const MixtureCoefficients& c, std::size_t i, std::size_t j) {
  const auto& p = c.at(i, j);
  return c.mass_density(i) * p.lambda * (1.0 - p.alpha);
}

double thermal_weight(const MixtureCoefficients& c, std::size_t i, std::size_t j) {
  const auto& p = c.at(i, j);
  return c.density(i) * p.lambda * (1.0 - p.beta);
}

std::vector<double> solve_velocities(const MomentSet& previous, const MixtureCoefficients& c, double dt) {
  const std::size_t n = previous.size();
  const auto d = static_cast<std::size_t>(previous.dim());
  std::vector<double> matrix(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    matrix[i * n + i] = previous.mass_density(i) / dt;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = exchange_weight(c, i, j);
      matrix[i * n + i] += w;
      matrix[i * n + j] -= w;
    }
  }
  std::vector<double> velocities(n * d);
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = previous.mass_density(i) * previous.velocity(i)[a] / dt;
    const auto x = detail::solve_dense(matrix, std::move(rhs));
    for (std::size_t i = 0; i < n; ++i) velocities[i * d + a] = x[i];
  }
  return velocities;
}

std::vector<double> solve_temperatures(const MomentSet& previous, std::span<const double> velocities,
                                       const MixtureCoefficients& c, double dt) {
  const std::size_t n = previous.size();
  const auto d = static_cast<std::size_t>(previous.dim());
  const double dim = previous.dim();
  auto u = [&](std::size_t i) { return velocities.subspan(i * d, d); };

  std::vector<double> matrix(n * n, 0.0);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double n_i = previous.density(i);
    const double m_i = previous.mass(i);
    const double s_i = dot(u(i), u(i));
    matrix[i * n + i] = dim * n_i / dt;
    rhs[i] = dim * n_i * previous.temperature(i) / dt -
             previous.mass_density(i) * (s_i - previous.speed_squared(i)) / dt;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = thermal_weight(c, i, j);
      const double s_j = dot(u(j), u(j));
      const double cross = dot(u(i), u(j));
      matrix[i * n + i] += 2.0 * dim * w;
      matrix[i * n + j] -= 2.0 * dim * w;
      rhs[i] += 2.0 * w * (previous.mass(j) * (s_j - cross) - m_i * (s_i - cross));
    }
  }
  return detail::solve_dense(std::move(matrix), std::move(rhs));
}

double relative_change(const MomentSet& a, const MomentSet& b) {
  double change = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ua = a.velocity(i);
    const auto ub = b.velocity(i);
    double du = 0.0;
    for (std::size_t k = 0; k < ua.size(); ++k) du += (ua[k] - ub[k]) * (ua[k] - ub[k]);
    // Velocities are measured against the larger of |u_i| and the thermal speed.
    const double speed_scale = std::max(std::sqrt(b.speed_squared(i)), std::sqrt(b.temperature(i) / b.mass(i)));
    change = std::max(change, std::sqrt(du) / speed_scale);
    change = std::max(change, std::abs(a.temperature(i) - b.temperature(i)) / b.temperature(i));
  }
  return change;
}

MomentSet with_state(const MomentSet& like, std::vector<double> velocities, std::vector<double> temperatures) {
  return MomentSet(like.dim(), std::vector<double>(like.masses().begin(), like.masses().end()),
                   std::vector<double>(like.densities().begin(), like.densities().end()), std::move(velocities),
                   std::move(temperatures));
}

}  // namespace

GstResult gst_moment_update(const MomentSet& current, const SpeciesSet& species, const KappaTable& kappa,
                            double dt, const GstOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("gst_moment_update: dt must be positive");
  if (current.size() != species.size()) {
    throw std::invalid_argument("gst_moment_update: moment set and species set differ in size");
  }
  if (options.max_iterations < 1) throw std::invalid_argument("gst_moment_update: max_iterations must be >= 1");

  MomentSet iterate = current;
  auto coefficients = assemble_coefficients(species, kappa, iterate);
  double change = 0.0;
  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    auto velocities = solve_velocities(current, coefficients, dt);
    auto temperatures = solve_temperatures(current, velocities, coefficients, dt);
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
      if (!(temperatures[i] > 0.0)) {
        throw SolverError(SolverError::Kind::NonPositiveTemperature,
                          "gst_moment_update: iterate " + std::to_string(iteration) +
                              " produced non-positive temperature " + std::to_string(temperatures[i]) +
                              " for species " + std::to_string(i + 1),
                          static_cast<int>(i), iteration);
      }
    }
    MomentSet next = with_state(current, std::move(velocities), std::move(temperatures));
    change = relative_change(next, iterate);
    iterate = std::move(next);
    coefficients = assemble_coefficients(species, kappa, iterate);
    if (change <= options.tolerance) {
      return GstResult{std::move(iterate), iteration, change, std::move(coefficients)};
    }
  }
  throw SolverError(SolverError::Kind::NonConvergence,
                    "gst_moment_update: no convergence after " + std::to_string(options.max_iterations) +
                        " iterations (relative change " + std::to_string(change) + ")",
                    -1, options.max_iterations);
}

BackwardEulerResidual backward_euler_residual(const MomentSet& previous, const MomentSet& next,
                                              const SpeciesSet& species, const KappaTable& kappa, double dt) {
  const auto c = assemble_coefficients(species, kappa, next);
  const std::size_t n = next.size();
  const auto d = static_cast<std::size_t>(next.dim());
  const double dim = next.dim();
  BackwardEulerResidual r;
  for (std::size_t i = 0; i < n; ++i) {
    const auto u_i = next.velocity(i);
    for (std::size_t a = 0; a < d; ++a) {
      double value = next.mass_density(i) * (u_i[a] - previous.velocity(i)[a]);
      for (std::size_t j = 0; j < n; ++j) value -= dt * exchange_weight(c, i, j) * (next.velocity(j)[a] - u_i[a]);
      r.momentum = std::max(r.momentum, std::abs(value));
    }
    const double s_i = next.speed_squared(i);
    double value = next.mass_density(i) * (s_i - previous.speed_squared(i)) +
                   dim * next.density(i) * (next.temperature(i) - previous.temperature(i));
    for (std::size_t j = 0; j < n; ++j) {
      const double w = thermal_weight(c, i, j);
      const double cross = dot(u_i, next.velocity(j));
      value -= dt * 2.0 * dim * w * (next.temperature(j) - next.temperature(i));
      value -= dt * 2.0 * w * (next.mass(j) * (next.speed_squared(j) - cross) - next.mass(i) * (s_i - cross));
    }
    r.energy = std::max(r.energy, std::abs(value));
  }
  return r;
}

}  // namespace mlb
