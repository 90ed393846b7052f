#pragma once

#include "mlb/mixture.hpp"
#include "mlb/moments.hpp"
#include "mlb/species.hpp"

namespace mlb {

struct GstOptions {
  /// Stop when the largest relative change of any u_i or T_i between
  /// successive iterates is at most this value.
  double tolerance = 1e-12;
  int max_iterations = 200;
};

struct GstResult {
  MomentSet moments;
  int iterations = 0;
  /// Relative change at the final iterate.
  double change = 0.0;
  /// Coefficients evaluated at the returned temperatures.
  MixtureCoefficients coefficients;
};

/// Backward-Euler moment update with collision frequencies that depend on the
/// unknown temperatures, solved by a Gauss-Seidel-type fixed point.
///
/// Each iteration freezes lambda at the current temperature iterate, solves the
/// momentum equations as one linear N x N system per velocity component, then
/// the energy equations as one linear N x N system in the temperatures (with
/// |u|^2 and u_i.u_j taken from the fresh velocities), and refreshes lambda.
/// The first iterate is the previous time level. Densities do not change.
///
/// Throws std::invalid_argument for dt <= 0, and SolverError when a temperature
/// iterate is non-positive or the iteration limit is reached.
GstResult gst_moment_update(const MomentSet& current, const SpeciesSet& species, const KappaTable& kappa,
                            double dt, const GstOptions& options = {});

struct BackwardEulerResidual {
  /// max over species and components of
  /// |rho_i (u_i' - u_i) - dt sum_j rho_i lambda_ij' (1 - alpha_ij)(u_j' - u_i')|
  double momentum = 0.0;
  /// max over species of the energy-equation residual, same scaling (times dt).
  double energy = 0.0;
};

/// Residual of the backward-Euler moment equations with lambda evaluated at
/// the temperatures of `next`.
BackwardEulerResidual backward_euler_residual(const MomentSet& previous, const MomentSet& next,
                                              const SpeciesSet& species, const KappaTable& kappa, double dt);

}  // namespace mlb
