#include "mlb/maxwellian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mlb {

std::vector<double> log_maxwellian(double n, double u, double theta, const VelocityGrid& grid) {
  if (!(n > 0.0)) throw std::invalid_argument("maxwellian: density must be positive");
  if (!(theta > 0.0)) throw std::invalid_argument("maxwellian: theta must be positive");
  const double log_prefactor = std::log(n) - 0.5 * std::log(2.0 * std::numbers::pi * theta);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(grid.size()));
  for (const double v : grid.centers()) {
    const double c = v - u;
    out.push_back(log_prefactor - c * c / (2.0 * theta));
  }
  return out;
}

std::vector<double> maxwellian(double n, double u, double theta, const VelocityGrid& grid) {
  auto values = log_maxwellian(n, u, theta, grid);
  for (auto& x : values) x = std::exp(x);
  return values;
}

}  // namespace mlb
