#pragma once

#include <cstddef>
#include <vector>

#include "mlb/mixture.hpp"
#include "mlb/moments.hpp"
#include "mlb/species.hpp"

namespace mlb {

/// d(rho_i u_i)/dt = sum_j rho_i lambda_ij (1 - alpha_ij)(u_j - u_i), row-major N x d.
std::vector<double> momentum_rhs(const MomentSet& moments, const MixtureCoefficients& coefficients);

/// dE_i/dt, one entry per species.
std::vector<double> energy_rhs(const MomentSet& moments, const MixtureCoefficients& coefficients);

/// dT_i/dt (densities are constant), from
///   (d/2) d(n_i T_i)/dt = d sum_j n_i lambda_ij (1-beta_ij)(T_j - T_i)
///                         + sum_j n_i lambda_ij gamma_ij |u_i - u_j|^2.
std::vector<double> temperature_rhs(const MomentSet& moments, const MixtureCoefficients& coefficients);

struct EquilibriumState {
  std::vector<double> velocity;
  double temperature = 0.0;
};

/// Time-invariant limit (u_inf, T_inf) fixed by total mass, momentum and energy.
EquilibriumState conserved_state(const MomentSet& moments);

struct RelaxationRates {
  /// d(rho_i u_i - rho_j u_j)/dt
  std::vector<double> momentum;
  /// (d/2) d(n_i T_i - n_j T_j)/dt
  double thermal = 0.0;
};

/// Pairwise relaxation rates of the model restricted to the two species {i, j}.
RelaxationRates model_relaxation_rates(const MomentSet& moments, const MixtureCoefficients& coefficients,
                                       std::size_t i, std::size_t j);

/// Binary Coulomb (Boltzmann) relaxation rates for the pair {i, j}, using the
/// moment-set densities.
RelaxationRates boltzc_relaxation_rates(const MomentSet& moments, const SpeciesSet& species,
                                        std::size_t i, std::size_t j);

struct MomentTrajectory {
  std::vector<double> times;
  std::vector<MomentSet> states;
  std::vector<std::vector<double>> total_momentum;
  std::vector<double> total_energy;
  EquilibriumState limit;

  [[nodiscard]] const MomentSet& final_state() const { return states.back(); }
  /// max_n |P(t_n) - P(t_0)| over all components.
  [[nodiscard]] double momentum_drift() const;
  [[nodiscard]] double energy_drift() const;
};

/// Classical fixed-step RK4 on (rho_i u_i, E_i) with lambda re-evaluated from
/// the stage temperatures. The last step is shortened to land on t_end.
/// A sample is stored every `sample_every` steps and at t_end.
/// Throws SolverError if a stage temperature becomes non-positive.
MomentTrajectory reference_integrate(const MomentSet& initial, const SpeciesSet& species,
                                     const KappaTable& kappa, double t_end, double dt,
                                     int sample_every = 1);

}  // namespace mlb
