#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlb/moments.hpp"
#include "mlb/velocity_grid.hpp"

namespace mlb {

/// Per-species cell values f_i(v_k) on one shared grid.
class DistributionSet {
 public:
  /// Throws std::invalid_argument if any array length differs from the grid
  /// size or any value is non-finite.
  DistributionSet(VelocityGrid grid, std::vector<std::vector<double>> values);

  [[nodiscard]] const VelocityGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t species_count() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> species(std::size_t i) const { return values_.at(i); }
  [[nodiscard]] double mass_sum(std::size_t i) const;

  /// Moments of every species with the given masses (d = 1).
  [[nodiscard]] MomentSet moments(std::span<const double> masses) const;

 private:
  VelocityGrid grid_;
  std::vector<std::vector<double>> values_;
};

/// h_v sum_k (f_k log f_k - f_k). Throws SolverError if any f_k <= 0.
double entropy(std::span<const double> f, const VelocityGrid& grid);

/// Total entropy summed over species.
double entropy(const DistributionSet& distributions);

}  // namespace mlb
