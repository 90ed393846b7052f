#pragma once

#include <span>
#include <vector>

#include "mlb/distribution.hpp"
#include "mlb/gst.hpp"
#include "mlb/mixture.hpp"
#include "mlb/moments.hpp"
#include "mlb/species.hpp"
#include "mlb/tridiagonal.hpp"
#include "mlb/velocity_grid.hpp"

namespace mlb {

/// One pairwise contribution lambda_ij theta_ij G_ij to a species' implicit system.
struct CollisionTerm {
  double frequency = 0.0;
  double theta = 1.0;
  TridiagonalOperator shape;
};

/// Solve (I + dt/h^2 sum_j lambda_ij theta_ij G_ij) f' = f by the Thomas algorithm.
/// The system matrix has unit-plus-positive diagonal, non-positive
/// off-diagonals and zero column sums apart from I, so sum_k f'_k = sum_k f_k.
std::vector<double> implicit_collision_solve(std::span<const double> f, std::span<const CollisionTerm> terms,
                                             double dt, const VelocityGrid& grid);

/// The collision terms of species i built from mixture Maxwellians at the
/// given moments and coefficients.
std::vector<CollisionTerm> collision_terms(const MomentSet& moments, const MixtureCoefficients& coefficients,
                                           std::size_t i, const VelocityGrid& grid);

struct SolverOptions {
  GstOptions gst;
  /// Largest tolerated relative gap between the moments of f and the moment
  /// state before a step is flagged.
  double drift_threshold = 1e-4;
  /// Turn a flagged drift into a SolverError.
  bool fail_on_drift = false;
};

/// Distributions plus the moment state that drives the mixture Maxwellians.
struct KineticState {
  DistributionSet distributions;
  MomentSet moments;
  double time = 0.0;
};

/// Moments are taken from the discrete distributions (no renormalisation).
KineticState make_initial_state(DistributionSet distributions, std::span<const double> masses);

struct StepDiagnostics {
  int gst_iterations = 0;
  double gst_change = 0.0;
  /// |sum_k f_i' - sum_k f_i| / sum_k f_i per species.
  std::vector<double> mass_drift;
  /// Relative change of total momentum / energy of the moment state.
  double momentum_drift = 0.0;
  double energy_drift = 0.0;
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  /// Moments of the updated distributions.
  std::vector<SpeciesMoments> distribution_moments;
  /// Largest relative gap between distribution_moments and the moment state.
  double moment_gap = 0.0;
  bool drift_exceeded = false;
};

struct StepResult {
  KineticState state;
  StepDiagnostics diagnostics;
};

/// One backward-Euler step: GST moment update, mixture Maxwellians from the
/// new moments, one tridiagonal solve per species, then diagnostics.
/// Throws SolverError if a distribution cell becomes non-positive, on GST
/// failure, and on drift when `fail_on_drift` is set.
StepResult full_step(const KineticState& state, const SpeciesSet& species, const KappaTable& kappa, double dt,
                     const SolverOptions& options = {});

/// Relative total-momentum change; the scale is max(|sum P|, sum |P_i|).
double relative_momentum_change(const MomentSet& before, const MomentSet& after);
double relative_energy_change(const MomentSet& before, const MomentSet& after);

}  // namespace mlb
