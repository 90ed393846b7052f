#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mlb/moments.hpp"
#include "mlb/species.hpp"

namespace mlb {

// ---------------------------------------------------------------------------
// Scalar pair algebra
// ---------------------------------------------------------------------------

/// Coulomb momentum/energy exchange prefactor for the pair (a, b):
///
///   2 |log L| (q_a q_b)^2 n_a n_b
///   -------------------------------------------------------------------
///   3 (2 pi)^{3/2} eps0^2 m_a m_b (T_a/m_a + T_b/m_b)^{3/2}
///
/// Symmetric under a <-> b. Throws std::invalid_argument for T <= 0.
double coulomb_rate(double mass_a, double charge_a, double density_a, double mass_b, double charge_b,
                    double density_b, double epsilon0, double log_lambda, double temperature_a,
                    double temperature_b);

/// coulomb_rate for species (i, j) of a set, with explicit densities.
double coulomb_rate(const SpeciesSet& species, std::size_t i, std::size_t j, double density_i,
                    double density_j, double temperature_i, double temperature_j);

/// coulomb_rate for species (i, j) using the densities stored in the set.
double coulomb_rate(const SpeciesSet& species, std::size_t i, std::size_t j, double temperature_i,
                    double temperature_j);

/// lambda_ij = kappa xi / n_i.
double collision_frequency(double kappa, double xi, double density_i);

/// Lower feasibility bound on kappa_ij: (m_i + m_j) / (2 m_i).
double kappa_lower_bound(double mass_i, double mass_j);

struct MatchedWeights {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
};

/// Mixture weights that reproduce the Coulomb momentum and temperature
/// relaxation rates when lambda_ij = kappa xi / n_i:
///   alpha = 1 - mu/kappa,  beta = 1 - 1/(2 kappa),  gamma = m_j / (2 kappa).
/// Throws std::invalid_argument if kappa < mu (alpha would be negative).
MatchedWeights matched_coefficients(double mass_i, double mass_j, double kappa);

struct MixtureWeights {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Weights of the reverse pair (j, i) implied by pairwise momentum and energy
/// conservation, given the forward weights and both frequencies.
/// Throws std::domain_error if lambda_ji = 0 while the forward pair still exchanges
/// momentum or energy.
MixtureWeights partner_coefficients(const MixtureWeights& forward, double lambda_ij, double lambda_ji,
                                    const SpeciesSpec& species_i, const SpeciesSpec& species_j);

/// Velocity weight for which u_ij = u_ji (the symmetric mixture-velocity choice).
double symmetric_velocity_weight(double mass_density_i, double lambda_ij, double mass_density_j,
                                 double lambda_ji);

/// u_ij = alpha u_i + (1 - alpha) u_j.
std::vector<double> mixture_velocity(double alpha, std::span<const double> velocity_i,
                                     std::span<const double> velocity_j);

/// T_ij = beta T_i + (1 - beta) T_j + (gamma / d) |u_i - u_j|^2 with d = u_i.size().
double mixture_temperature(double beta, double gamma, double temperature_i, double temperature_j,
                           std::span<const double> velocity_i, std::span<const double> velocity_j);

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

/// Ordered-pair table of tunable frequency multipliers kappa_ij.
/// Asymmetric tables are allowed.
class KappaTable {
 public:
  /// Row-major N x N values.
  KappaTable(std::size_t species, std::vector<double> values);

  static KappaTable uniform(std::size_t species, double value);
  /// kappa_ij = c max(mu_ij, mu_ji). Throws std::invalid_argument for c < 1.
  static KappaTable scaled(std::span<const double> masses, double factor);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values_.at(i * size_ + j); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Throws std::invalid_argument naming the first pair with kappa_ij < mu_ij.
  void validate(std::span<const double> masses) const;

 private:
  std::size_t size_;
  std::vector<double> values_;
};

struct PairCoefficients {
  double kappa = 0.0;
  double xi = 0.0;
  double lambda = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  /// rho_i lambda_ij (1 - alpha_ij), recorded at assembly.
  double delta = 0.0;
  double mu = 0.0;
};

/// Coefficients for every ordered pair together with the per-species masses
/// and densities they were assembled from.
class MixtureCoefficients {
 public:
  MixtureCoefficients(std::vector<double> masses, std::vector<double> densities);

  [[nodiscard]] std::size_t size() const noexcept { return masses_.size(); }
  [[nodiscard]] PairCoefficients& at(std::size_t i, std::size_t j) { return pairs_.at(i * size() + j); }
  [[nodiscard]] const PairCoefficients& at(std::size_t i, std::size_t j) const {
    return pairs_.at(i * size() + j);
  }
  [[nodiscard]] double mass(std::size_t i) const { return masses_.at(i); }
  [[nodiscard]] double density(std::size_t i) const { return densities_.at(i); }
  [[nodiscard]] double mass_density(std::size_t i) const { return masses_.at(i) * densities_.at(i); }

 private:
  std::vector<double> masses_;
  std::vector<double> densities_;
  std::vector<PairCoefficients> pairs_;
};

/// Matched coefficients for all ordered pairs at the given densities and
/// temperatures (lambda depends on temperature through xi). Validates kappa.
MixtureCoefficients assemble_coefficients(const SpeciesSet& species, const KappaTable& kappa,
                                          std::span<const double> densities,
                                          std::span<const double> temperatures);

/// Same, reading densities and temperatures from a moment set.
MixtureCoefficients assemble_coefficients(const SpeciesSet& species, const KappaTable& kappa,
                                          const MomentSet& moments);

struct MixtureParameters {
  std::vector<double> velocity;
  double temperature = 0.0;
  /// T_ij / m_i.
  double theta = 0.0;
};

/// u_ij, T_ij and theta_ij for one ordered pair. For i == j the species' own
/// (u_i, T_i) are returned unchanged.
MixtureParameters mixture_parameters(const MomentSet& moments, const MixtureCoefficients& coefficients,
                                     std::size_t i, std::size_t j);

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct SymmetryResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  /// |delta_ij - delta_ji|
  double momentum = 0.0;
  /// |n_i lambda_ij (1 - beta_ij) - n_j lambda_ji (1 - beta_ji)|
  double thermal = 0.0;
  /// |delta_ij - 2 n_i lambda_ij gamma_ij - (2 n_j lambda_ji gamma_ji - delta_ji)|
  double friction = 0.0;
  /// max(|delta_ij|, |delta_ji|, 1e-300)
  double scale = 0.0;

  [[nodiscard]] double max_relative() const;
};

/// Residuals of the three pairwise conservation symmetries for each unordered
/// pair i < j. delta is recomputed from the stored alpha and lambda.
std::vector<SymmetryResidual> verify_symmetries(const MixtureCoefficients& coefficients);

struct Assumption1Violation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string parameter;
  double value = 0.0;
};

struct Assumption1Report {
  bool holds = true;
  std::vector<Assumption1Violation> violations;
};

/// 0 <= alpha, beta <= 1 and gamma >= 0 for every ordered pair.
Assumption1Report check_assumption1(const MixtureCoefficients& coefficients);

/// Two-species sufficient conditions on (alpha_12, beta_12, gamma_12) and
/// eps = n_1 lambda_12 / (n_2 lambda_21).
struct PirnerReport {
  static constexpr std::array<const char*, 5> kNames = {
      "eps <= 1",
      "eps <= m2/m1",
      "0 <= gamma12 <= m1(1-alpha12)",
      "eps/(1+eps) <= alpha12 <= 1",
      "eps/(1+eps) <= beta12 <= 1",
  };

  double epsilon = 0.0;
  std::array<bool, 5> conditions{};
  /// Whether the reverse-pair weights satisfy pairwise conservation (to 1e-12).
  bool conservation_consistent = false;
  Assumption1Report assumption1;

  [[nodiscard]] bool all_conditions() const;
  /// False only when every premise holds but the assumption does not.
  [[nodiscard]] bool implication_holds() const;
};

/// Throws std::invalid_argument unless exactly two species are present.
PirnerReport check_pirner(const MixtureCoefficients& coefficients);

}  // namespace mlb
