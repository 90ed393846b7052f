#pragma once

#include <stdexcept>
#include <string>

namespace mlb {

/// Raised when a numerical operation produces or meets an inadmissible state
/// (collapsed moments, stalled iteration, zero pivot, non-positive cells).
/// Precondition violations on user input use std::invalid_argument instead.
class SolverError : public std::runtime_error {
 public:
  enum class Kind {
    NonConvergence,
    NonPositiveTemperature,
    NonPositiveDensity,
    NonPositiveDistribution,
    ZeroPivot,
    MomentDrift,
  };

  SolverError(Kind kind, const std::string& what, int species = -1, int iteration = -1)
      : std::runtime_error(what), kind_(kind), species_(species), iteration_(iteration) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// Offending species index, or -1 when not species-specific.
  [[nodiscard]] int species() const noexcept { return species_; }
  /// Offending iterate or step, or -1 when not applicable.
  [[nodiscard]] int iteration() const noexcept { return iteration_; }

 private:
  Kind kind_;
  int species_;
  int iteration_;
};

}  // namespace mlb
