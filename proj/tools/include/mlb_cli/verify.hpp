#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlb/mixture.hpp"
#include "mlb/moments.hpp"
#include "mlb/species.hpp"
#include "mlb_cli/config.hpp"

namespace mlb::cli {

struct CheckRow {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckRow> rows;
  [[nodiscard]] bool passed() const;
};

/// Relative tolerance for the symmetry and matching rows.
inline constexpr double kVerifyTolerance = 1e-12;

/// Relative error between two rates. The scale is the larger of |a|, |b| and
/// `magnitude` (the sum of the absolute values of the terms making up the
/// rate), so rates that nearly cancel are not judged on their rounding noise.
double rate_relative_error(double a, double b, double magnitude);

/// Largest relative mismatch between the model and binary Coulomb relaxation
/// rates over all ordered pairs.
double matching_error(const MomentSet& moments, const SpeciesSet& species, const MixtureCoefficients& coefficients);

/// Symmetry, matching, weight bounds and (for two species) the Pirner
/// implication, on the given coefficients.
VerifyReport verify_coefficients(const MomentSet& moments, const SpeciesSet& species,
                                 const MixtureCoefficients& coefficients);

/// Coefficients assembled at the configured initial state.
VerifyReport verify_config(const SimConfig& config);

void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace mlb::cli
