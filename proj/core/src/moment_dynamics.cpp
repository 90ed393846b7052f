#include "mlb/moment_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mlb/error.hpp"

namespace mlb {

namespace {

double momentum_exchange(const MixtureCoefficients& c, std::size_t i, std::size_t j) {
  const auto& p = c.at(i, j);
  return c.mass_density(i) * p.lambda * (1.0 - p.alpha);
}

double thermal_exchange(const MixtureCoefficients& c, std::size_t i, std::size_t j) {
  const auto& p = c.at(i, j);
  return c.density(i) * p.lambda * (1.0 - p.beta);
}

double friction_weight(const MixtureCoefficients& c, std::size_t i, std::size_t j) {
  const auto& p = c.at(i, j);
  return c.density(i) * p.lambda * p.gamma;
}

double slip_squared(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

void require_matching_sizes(const MomentSet& moments, const MixtureCoefficients& coefficients) {
  if (moments.size() != coefficients.size()) {
    throw std::invalid_argument("moment dynamics: moment set and coefficient table differ in species count");
  }
}

}  // namespace

std::vector<double> momentum_rhs(const MomentSet& moments, const MixtureCoefficients& coefficients) {
  require_matching_sizes(moments, coefficients);
  const std::size_t n = moments.size();
  const auto d = static_cast<std::size_t>(moments.dim());
  std::vector<double> out(n * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u_i = moments.velocity(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = momentum_exchange(coefficients, i, j);
      const auto u_j = moments.velocity(j);
      for (std::size_t a = 0; a < d; ++a) out[i * d + a] += w * (u_j[a] - u_i[a]);
    }
  }
  return out;
}

std::vector<double> energy_rhs(const MomentSet& moments, const MixtureCoefficients& coefficients) {
  require_matching_sizes(moments, coefficients);
  const std::size_t n = moments.size();
  const double d = moments.dim();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u_i = moments.velocity(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto u_j = moments.velocity(j);
      const double ui_uj = dot(u_i, u_j);
      const double s_i = dot(u_i, u_i);
      const double s_j = dot(u_j, u_j);
      out[i] += d * thermal_exchange(coefficients, i, j) * (moments.temperature(j) - moments.temperature(i));
      out[i] += (momentum_exchange(coefficients, i, j) - friction_weight(coefficients, i, j)) * (ui_uj - s_i);
      out[i] -= (momentum_exchange(coefficients, j, i) - friction_weight(coefficients, j, i)) * (ui_uj - s_j);
    }
  }
  return out;
}

std::vector<double> temperature_rhs(const MomentSet& moments, const MixtureCoefficients& coefficients) {
  require_matching_sizes(moments, coefficients);
  const std::size_t n = moments.size();
  const double d = moments.dim();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double heating = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      heating += d * thermal_exchange(coefficients, i, j) * (moments.temperature(j) - moments.temperature(i));
      heating += friction_weight(coefficients, i, j) * slip_squared(moments.velocity(i), moments.velocity(j));
    }
    out[i] = 2.0 * heating / (d * moments.density(i));
  }
  return out;
}

EquilibriumState conserved_state(const MomentSet& moments) {
  const std::size_t n = moments.size();
  const double d = moments.dim();
  double total_rho = 0.0;
  double total_n = 0.0;
  double thermal = 0.0;
  double kinetic = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total_rho += moments.mass_density(i);
    total_n += moments.density(i);
    thermal += moments.density(i) * moments.temperature(i);
    kinetic += moments.mass_density(i) * moments.speed_squared(i);
  }
  EquilibriumState eq;
  eq.velocity = moments.total_momentum();
  for (auto& c : eq.velocity) c /= total_rho;
  const double u_inf_sq = dot(eq.velocity, eq.velocity);
  eq.temperature = thermal / total_n + (kinetic - total_rho * u_inf_sq) / (d * total_n);
  return eq;
}

RelaxationRates model_relaxation_rates(const MomentSet& moments, const MixtureCoefficients& coefficients,
                                       std::size_t i, std::size_t j) {
  require_matching_sizes(moments, coefficients);
  const auto u_i = moments.velocity(i);
  const auto u_j = moments.velocity(j);
  const double d = moments.dim();
  const double delta = momentum_exchange(coefficients, i, j);

  RelaxationRates r;
  r.momentum.resize(u_i.size());
  for (std::size_t a = 0; a < u_i.size(); ++a) r.momentum[a] = 2.0 * delta * (u_j[a] - u_i[a]);
  r.thermal = 2.0 * d * thermal_exchange(coefficients, i, j) * (moments.temperature(j) - moments.temperature(i)) +
              (2.0 * friction_weight(coefficients, i, j) - delta) * slip_squared(u_i, u_j);
  return r;
}

RelaxationRates boltzc_relaxation_rates(const MomentSet& moments, const SpeciesSet& species,
                                        std::size_t i, std::size_t j) {
  const double xi = coulomb_rate(species, i, j, moments.density(i), moments.density(j),
                                 moments.temperature(i), moments.temperature(j));
  const auto u_i = moments.velocity(i);
  const auto u_j = moments.velocity(j);
  const double m_i = moments.mass(i);
  const double m_j = moments.mass(j);
  const double d = moments.dim();

  RelaxationRates r;
  r.momentum.resize(u_i.size());
  for (std::size_t a = 0; a < u_i.size(); ++a) r.momentum[a] = xi * (m_i + m_j) * (u_j[a] - u_i[a]);
  r.thermal = xi * (d * (moments.temperature(j) - moments.temperature(i)) +
                    0.5 * (m_j - m_i) * slip_squared(u_i, u_j));
  return r;
}

double MomentTrajectory::momentum_drift() const {
  double drift = 0.0;
  for (const auto& p : total_momentum) {
    for (std::size_t a = 0; a < p.size(); ++a) drift = std::max(drift, std::abs(p[a] - total_momentum.front()[a]));
  }
  return drift;
}

double MomentTrajectory::energy_drift() const {
  double drift = 0.0;
  for (const double e : total_energy) drift = std::max(drift, std::abs(e - total_energy.front()));
  return drift;
}

namespace {

// Conserved variables: momentum (N x d) followed by energy (N).
struct ConservedVariables {
  std::vector<double> momentum;
  std::vector<double> energy;
};

ConservedVariables to_conserved(const MomentSet& m) {
  ConservedVariables c;
  const auto d = static_cast<std::size_t>(m.dim());
  c.momentum.resize(m.size() * d);
  c.energy.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto u = m.velocity(i);
    for (std::size_t a = 0; a < d; ++a) c.momentum[i * d + a] = m.mass_density(i) * u[a];
    c.energy[i] = m.energy(i);
  }
  return c;
}

MomentSet to_moments(const ConservedVariables& c, const MomentSet& like, int step) {
  const std::size_t n = like.size();
  const auto d = static_cast<std::size_t>(like.dim());
  std::vector<double> velocities(n * d);
  std::vector<double> temperatures(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = like.mass_density(i);
    double kinetic = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      velocities[i * d + a] = c.momentum[i * d + a] / rho;
      kinetic += c.momentum[i * d + a] * velocities[i * d + a];
    }
    temperatures[i] = 2.0 * (c.energy[i] - 0.5 * kinetic) / (static_cast<double>(d) * like.density(i));
    if (!(temperatures[i] > 0.0)) {
      throw SolverError(SolverError::Kind::NonPositiveTemperature,
                        "reference_integrate: temperature of species " + std::to_string(i + 1) +
                            " became non-positive; reduce the step size",
                        static_cast<int>(i), step);
    }
  }
  return MomentSet(like.dim(), std::vector<double>(like.masses().begin(), like.masses().end()),
                   std::vector<double>(like.densities().begin(), like.densities().end()),
                   std::move(velocities), std::move(temperatures));
}

ConservedVariables evaluate_rhs(const MomentSet& m, const SpeciesSet& species, const KappaTable& kappa) {
  const auto coefficients = assemble_coefficients(species, kappa, m);
  return {momentum_rhs(m, coefficients), energy_rhs(m, coefficients)};
}

ConservedVariables axpy(const ConservedVariables& base, double scale, const ConservedVariables& dir) {
  ConservedVariables out = base;
  for (std::size_t k = 0; k < out.momentum.size(); ++k) out.momentum[k] += scale * dir.momentum[k];
  for (std::size_t k = 0; k < out.energy.size(); ++k) out.energy[k] += scale * dir.energy[k];
  return out;
}

}  // namespace

MomentTrajectory reference_integrate(const MomentSet& initial, const SpeciesSet& species,
                                     const KappaTable& kappa, double t_end, double dt, int sample_every) {
  if (!(dt > 0.0)) throw std::invalid_argument("reference_integrate: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("reference_integrate: t_end must be non-negative");
  if (sample_every < 1) throw std::invalid_argument("reference_integrate: sample_every must be >= 1");
  if (initial.size() != species.size()) {
    throw std::invalid_argument("reference_integrate: moment set and species set differ in size");
  }
  kappa.validate(species.masses());

  MomentTrajectory traj;
  traj.limit = conserved_state(initial);
  auto record = [&traj](double t, const MomentSet& m) {
    traj.times.push_back(t);
    traj.states.push_back(m);
    traj.total_momentum.push_back(m.total_momentum());
    traj.total_energy.push_back(m.total_energy());
  };
  record(0.0, initial);

  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  MomentSet state = initial;
  ConservedVariables y = to_conserved(initial);
  for (long step = 1; step <= steps; ++step) {
    const double t0 = (step - 1) * dt;
    const double h = std::min(dt, t_end - t0);
    const int tag = static_cast<int>(step);

    const auto k1 = evaluate_rhs(state, species, kappa);
    const auto k2 = evaluate_rhs(to_moments(axpy(y, 0.5 * h, k1), initial, tag), species, kappa);
    const auto k3 = evaluate_rhs(to_moments(axpy(y, 0.5 * h, k2), initial, tag), species, kappa);
    const auto k4 = evaluate_rhs(to_moments(axpy(y, h, k3), initial, tag), species, kappa);
    for (std::size_t k = 0; k < y.momentum.size(); ++k) {
      y.momentum[k] += h / 6.0 * (k1.momentum[k] + 2.0 * k2.momentum[k] + 2.0 * k3.momentum[k] + k4.momentum[k]);
    }
    for (std::size_t k = 0; k < y.energy.size(); ++k) {
      y.energy[k] += h / 6.0 * (k1.energy[k] + 2.0 * k2.energy[k] + 2.0 * k3.energy[k] + k4.energy[k]);
    }
    state = to_moments(y, initial, tag);
    if (step % sample_every == 0 || step == steps) record(step == steps ? t_end : step * dt, state);
  }
  return traj;
}

}  // namespace mlb
