#include "mlb/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mlb {

namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

double coulomb_rate(double mass_a, double charge_a, double density_a, double mass_b, double charge_b,
                    double density_b, double epsilon0, double log_lambda, double temperature_a,
                    double temperature_b) {
  if (!(temperature_a > 0.0) || !(temperature_b > 0.0)) {
    throw std::invalid_argument("coulomb_rate: temperatures must be positive");
  }
  const double prefactor = 2.0 / (3.0 * std::pow(2.0 * std::numbers::pi, 1.5) * epsilon0 * epsilon0);
  const double qq = charge_a * charge_b;
  const double thermal = temperature_a / mass_a + temperature_b / mass_b;
  return prefactor * std::abs(log_lambda) * qq * qq * density_a * density_b /
         (mass_a * mass_b * thermal * std::sqrt(thermal));
}

double coulomb_rate(const SpeciesSet& species, std::size_t i, std::size_t j, double density_i,
                    double density_j, double temperature_i, double temperature_j) {
  const auto& a = species[i];
  const auto& b = species[j];
  return coulomb_rate(a.mass, a.charge, density_i, b.mass, b.charge, density_j, species.epsilon0(),
                      species.log_lambda(i, j), temperature_i, temperature_j);
}

double coulomb_rate(const SpeciesSet& species, std::size_t i, std::size_t j, double temperature_i,
                    double temperature_j) {
  return coulomb_rate(species, i, j, species[i].density, species[j].density, temperature_i,
                      temperature_j);
}

double collision_frequency(double kappa, double xi, double density_i) {
  if (!(density_i > 0.0)) throw std::invalid_argument("collision_frequency: density must be positive");
  return kappa * xi / density_i;
}

double kappa_lower_bound(double mass_i, double mass_j) { return (mass_i + mass_j) / (2.0 * mass_i); }

MatchedWeights matched_coefficients(double mass_i, double mass_j, double kappa) {
  MatchedWeights w;
  w.mu = kappa_lower_bound(mass_i, mass_j);
  if (!(kappa >= w.mu)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "matched_coefficients: kappa = " << kappa << " < mu = " << w.mu;
    throw std::invalid_argument(msg.str());
  }
  w.alpha = 1.0 - w.mu / kappa;
  w.beta = 1.0 - 1.0 / (2.0 * kappa);
  w.gamma = mass_j / (2.0 * kappa);
  return w;
}

MixtureWeights partner_coefficients(const MixtureWeights& forward, double lambda_ij, double lambda_ji,
                                    const SpeciesSpec& species_i, const SpeciesSpec& species_j) {
  const double rho_i = species_i.mass * species_i.density;
  const double rho_j = species_j.mass * species_j.density;
  const double n_i = species_i.density;
  const double n_j = species_j.density;

  const double momentum_exchange = rho_i * lambda_ij * (1.0 - forward.alpha);
  const double thermal_exchange = n_i * lambda_ij * (1.0 - forward.beta);
  const double friction = momentum_exchange - n_i * lambda_ij * forward.gamma;

  if (lambda_ji == 0.0) {
    if (momentum_exchange != 0.0 || thermal_exchange != 0.0 || friction != 0.0) {
      throw std::domain_error(
          "partner_coefficients: lambda_ji = 0 but the forward pair exchanges momentum or energy");
    }
    return {1.0, 1.0, 0.0};
  }
  MixtureWeights reverse;
  reverse.alpha = 1.0 - momentum_exchange / (rho_j * lambda_ji);
  reverse.beta = 1.0 - thermal_exchange / (n_j * lambda_ji);
  reverse.gamma = friction / (n_j * lambda_ji);
  return reverse;
}

double symmetric_velocity_weight(double mass_density_i, double lambda_ij, double mass_density_j,
                                 double lambda_ji) {
  const double a = mass_density_i * lambda_ij;
  return a / (a + mass_density_j * lambda_ji);
}

std::vector<double> mixture_velocity(double alpha, std::span<const double> velocity_i,
                                     std::span<const double> velocity_j) {
  std::vector<double> out(velocity_i.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] = alpha * velocity_i[a] + (1.0 - alpha) * velocity_j[a];
  }
  return out;
}

double mixture_temperature(double beta, double gamma, double temperature_i, double temperature_j,
                           std::span<const double> velocity_i, std::span<const double> velocity_j) {
  double slip = 0.0;
  for (std::size_t a = 0; a < velocity_i.size(); ++a) {
    const double d = velocity_i[a] - velocity_j[a];
    slip += d * d;
  }
  const auto dim = static_cast<double>(velocity_i.size());
  return beta * temperature_i + (1.0 - beta) * temperature_j + gamma / dim * slip;
}

// ---------------------------------------------------------------------------

KappaTable::KappaTable(std::size_t species, std::vector<double> values)
    : size_(species), values_(std::move(values)) {
  if (values_.size() != size_ * size_) throw std::invalid_argument("kappa table: must be N x N");
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      const double k = values_[i * size_ + j];
      if (!std::isfinite(k) || k < 0.0) {
        throw std::invalid_argument("kappa table: kappa" + pair_label(i, j) +
                                    " must be finite and non-negative");
      }
    }
  }
}

KappaTable KappaTable::uniform(std::size_t species, double value) {
  return KappaTable(species, std::vector<double>(species * species, value));
}

KappaTable KappaTable::scaled(std::span<const double> masses, double factor) {
  if (!(factor >= 1.0)) throw std::invalid_argument("kappa table: scale factor must be >= 1");
  const std::size_t n = masses.size();
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      values[i * n + j] =
          factor * std::max(kappa_lower_bound(masses[i], masses[j]), kappa_lower_bound(masses[j], masses[i]));
    }
  }
  return KappaTable(n, std::move(values));
}

void KappaTable::validate(std::span<const double> masses) const {
  if (masses.size() != size_) {
    throw std::invalid_argument("kappa table: has " + std::to_string(size_) + " species, expected " +
                                std::to_string(masses.size()));
  }
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      const double mu = kappa_lower_bound(masses[i], masses[j]);
      const double k = (*this)(i, j);
      if (!(k >= mu)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "kappa" << pair_label(i, j) << " = " << k << " < mu" << pair_label(i, j) << " = " << mu;
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

MixtureCoefficients::MixtureCoefficients(std::vector<double> masses, std::vector<double> densities)
    : masses_(std::move(masses)), densities_(std::move(densities)), pairs_(masses_.size() * masses_.size()) {
  if (densities_.size() != masses_.size()) {
    throw std::invalid_argument("mixture coefficients: masses and densities differ in length");
  }
}

MixtureCoefficients assemble_coefficients(const SpeciesSet& species, const KappaTable& kappa,
                                          std::span<const double> densities,
                                          std::span<const double> temperatures) {
  const std::size_t n = species.size();
  if (densities.size() != n || temperatures.size() != n) {
    throw std::invalid_argument("assemble_coefficients: per-species arrays do not match species count");
  }
  const auto masses = species.masses();
  kappa.validate(masses);

  MixtureCoefficients table(masses, std::vector<double>(densities.begin(), densities.end()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& pair = table.at(i, j);
      pair.kappa = kappa(i, j);
      pair.xi = coulomb_rate(species, i, j, densities[i], densities[j], temperatures[i], temperatures[j]);
      pair.lambda = collision_frequency(pair.kappa, pair.xi, densities[i]);
      const auto w = matched_coefficients(masses[i], masses[j], pair.kappa);
      pair.alpha = w.alpha;
      pair.beta = w.beta;
      pair.gamma = w.gamma;
      pair.mu = w.mu;
      pair.delta = masses[i] * densities[i] * pair.lambda * (1.0 - pair.alpha);
    }
  }
  return table;
}

MixtureCoefficients assemble_coefficients(const SpeciesSet& species, const KappaTable& kappa,
                                          const MomentSet& moments) {
  return assemble_coefficients(species, kappa, moments.densities(), moments.temperatures());
}

MixtureParameters mixture_parameters(const MomentSet& moments, const MixtureCoefficients& coefficients,
                                     std::size_t i, std::size_t j) {
  MixtureParameters out;
  const auto u_i = moments.velocity(i);
  if (i == j) {
    out.velocity.assign(u_i.begin(), u_i.end());
    out.temperature = moments.temperature(i);
  } else {
    const auto& c = coefficients.at(i, j);
    const auto u_j = moments.velocity(j);
    out.velocity = mixture_velocity(c.alpha, u_i, u_j);
    out.temperature =
        mixture_temperature(c.beta, c.gamma, moments.temperature(i), moments.temperature(j), u_i, u_j);
  }
  out.theta = out.temperature / moments.mass(i);
  return out;
}

// ---------------------------------------------------------------------------

double SymmetryResidual::max_relative() const { return std::max({momentum, thermal, friction}) / scale; }

std::vector<SymmetryResidual> verify_symmetries(const MixtureCoefficients& coefficients) {
  std::vector<SymmetryResidual> out;
  const std::size_t n = coefficients.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& ij = coefficients.at(i, j);
      const auto& ji = coefficients.at(j, i);
      const double n_i = coefficients.density(i);
      const double n_j = coefficients.density(j);
      const double delta_ij = coefficients.mass_density(i) * ij.lambda * (1.0 - ij.alpha);
      const double delta_ji = coefficients.mass_density(j) * ji.lambda * (1.0 - ji.alpha);

      SymmetryResidual r;
      r.i = i;
      r.j = j;
      r.momentum = std::abs(delta_ij - delta_ji);
      r.thermal = std::abs(n_i * ij.lambda * (1.0 - ij.beta) - n_j * ji.lambda * (1.0 - ji.beta));
      r.friction = std::abs(delta_ij - 2.0 * n_i * ij.lambda * ij.gamma -
                            (2.0 * n_j * ji.lambda * ji.gamma - delta_ji));
      r.scale = std::max({std::abs(delta_ij), std::abs(delta_ji), 1e-300});
      out.push_back(r);
    }
  }
  return out;
}

Assumption1Report check_assumption1(const MixtureCoefficients& coefficients) {
  Assumption1Report report;
  const std::size_t n = coefficients.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = coefficients.at(i, j);
      if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) report.violations.push_back({i, j, "alpha", c.alpha});
      if (!(c.beta >= 0.0 && c.beta <= 1.0)) report.violations.push_back({i, j, "beta", c.beta});
      if (!(c.gamma >= 0.0)) report.violations.push_back({i, j, "gamma", c.gamma});
    }
  }
  report.holds = report.violations.empty();
  return report;
}

bool PirnerReport::all_conditions() const {
  return std::all_of(conditions.begin(), conditions.end(), [](bool b) { return b; });
}

bool PirnerReport::implication_holds() const {
  return !(all_conditions() && conservation_consistent) || assumption1.holds;
}

PirnerReport check_pirner(const MixtureCoefficients& coefficients) {
  if (coefficients.size() != 2) {
    throw std::invalid_argument("check_pirner: requires exactly two species, got " +
                                std::to_string(coefficients.size()));
  }
  const auto& c12 = coefficients.at(0, 1);
  const auto& c21 = coefficients.at(1, 0);
  const double m1 = coefficients.mass(0);
  const double m2 = coefficients.mass(1);

  PirnerReport report;
  const double denom = coefficients.density(1) * c21.lambda;
  report.epsilon = denom > 0.0 ? coefficients.density(0) * c12.lambda / denom
                               : std::numeric_limits<double>::infinity();
  const double eps = report.epsilon;
  const double floor = std::isfinite(eps) ? eps / (1.0 + eps) : 1.0;

  report.conditions[0] = eps <= 1.0;
  report.conditions[1] = eps <= m2 / m1;
  report.conditions[2] = c12.gamma >= 0.0 && c12.gamma <= m1 * (1.0 - c12.alpha);
  report.conditions[3] = floor <= c12.alpha && c12.alpha <= 1.0;
  report.conditions[4] = floor <= c12.beta && c12.beta <= 1.0;

  const auto r = verify_symmetries(coefficients).front();
  const double mass_scale = std::max({1.0, m1, m2});
  const double scale = std::max({r.scale, coefficients.density(0) * c12.lambda * mass_scale,
                                 coefficients.density(1) * c21.lambda * mass_scale});
  report.conservation_consistent = std::max({r.momentum, r.thermal, r.friction}) <= 1e-12 * scale;
  report.assumption1 = check_assumption1(coefficients);
  return report;
}

}  // namespace mlb
