#include "mlb/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mlb/error.hpp"

namespace mlb {

DistributionSet::DistributionSet(VelocityGrid grid, std::vector<std::vector<double>> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("distribution set: at least one species required");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].size() != static_cast<std::size_t>(grid_.size())) {
      throw std::invalid_argument("distribution set: species " + std::to_string(i + 1) +
                                  " does not match the grid size");
    }
    for (const double x : values_[i]) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("distribution set: species " + std::to_string(i + 1) +
                                    " has a non-finite value");
      }
    }
  }
}

double DistributionSet::mass_sum(std::size_t i) const {
  double sum = 0.0;
  for (const double x : values_.at(i)) sum += x;
  return sum;
}

MomentSet DistributionSet::moments(std::span<const double> masses) const {
  if (masses.size() != values_.size()) throw std::invalid_argument("distribution set: mass count mismatch");
  std::vector<double> n, u, t;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto m = moments_of(values_[i], grid_, masses[i]);
    n.push_back(m.density);
    u.push_back(m.velocity);
    t.push_back(m.temperature);
  }
  return MomentSet::from_scalar(std::vector<double>(masses.begin(), masses.end()), std::move(n), std::move(u),
                                std::move(t));
}

double entropy(std::span<const double> f, const VelocityGrid& grid) {
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!(f[k] > 0.0)) {
      throw SolverError(SolverError::Kind::NonPositiveDistribution,
                        "entropy: non-positive distribution value at cell " + std::to_string(k));
    }
    sum += f[k] * std::log(f[k]) - f[k];
  }
  return grid.width() * sum;
}

double entropy(const DistributionSet& distributions) {
  double total = 0.0;
  for (std::size_t i = 0; i < distributions.species_count(); ++i) {
    total += entropy(distributions.species(i), distributions.grid());
  }
  return total;
}

}  // namespace mlb
