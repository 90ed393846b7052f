#include "mlb/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mlb/error.hpp"

namespace mlb {

SpeciesMoments moments_of(std::span<const double> f, const VelocityGrid& grid, double mass) {
  if (f.size() != static_cast<std::size_t>(grid.size())) {
    throw std::invalid_argument("moments_of: distribution length does not match the grid");
  }
  const auto v = grid.centers();
  const double h = grid.width();

  double zeroth = 0.0;
  double first = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!std::isfinite(f[k])) {
      throw SolverError(SolverError::Kind::NonPositiveDistribution,
                        "moments_of: non-finite distribution value at cell " + std::to_string(k));
    }
    zeroth += f[k];
    first += v[k] * f[k];
  }
  SpeciesMoments m;
  m.density = h * zeroth;
  if (!(m.density > 0.0)) {
    throw SolverError(SolverError::Kind::NonPositiveDensity,
                      "moments_of: computed density is not positive (" + std::to_string(m.density) + ")");
  }
  m.velocity = h * first / m.density;

  double second = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double c = v[k] - m.velocity;
    second += c * c * f[k];
  }
  m.temperature = mass * h * second / m.density;
  if (!(m.temperature > 0.0)) {
    throw SolverError(SolverError::Kind::NonPositiveTemperature,
                      "moments_of: computed temperature is not positive (" +
                          std::to_string(m.temperature) + ")");
  }
  m.mass_density = mass * m.density;
  m.energy = 0.5 * m.mass_density * m.velocity * m.velocity + 0.5 * m.density * m.temperature;
  return m;
}

MomentSet::MomentSet(int dim, std::vector<double> masses, std::vector<double> densities,
                     std::vector<double> velocities, std::vector<double> temperatures)
    : dim_(dim),
      masses_(std::move(masses)),
      densities_(std::move(densities)),
      velocities_(std::move(velocities)),
      temperatures_(std::move(temperatures)) {
  if (dim_ < 1) throw std::invalid_argument("moment set: dimension must be >= 1");
  const std::size_t n = masses_.size();
  if (n == 0 || densities_.size() != n || temperatures_.size() != n ||
      velocities_.size() != n * static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("moment set: inconsistent per-species array sizes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(masses_[i] > 0.0)) throw std::invalid_argument("moment set: mass must be positive");
    if (!(densities_[i] > 0.0)) throw std::invalid_argument("moment set: density must be positive");
    if (!(temperatures_[i] > 0.0)) {
      throw std::invalid_argument("moment set: temperature of species " + std::to_string(i + 1) +
                                  " must be positive");
    }
  }
}

MomentSet MomentSet::from_scalar(std::vector<double> masses, std::vector<double> densities,
                                 std::vector<double> velocities, std::vector<double> temperatures) {
  return MomentSet(1, std::move(masses), std::move(densities), std::move(velocities),
                   std::move(temperatures));
}

std::span<const double> MomentSet::velocity(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("moment set: species index");
  return std::span<const double>(velocities_).subspan(i * static_cast<std::size_t>(dim_),
                                                      static_cast<std::size_t>(dim_));
}

double MomentSet::speed_squared(std::size_t i) const {
  const auto u = velocity(i);
  return dot(u, u);
}

double MomentSet::energy(std::size_t i) const {
  return 0.5 * mass_density(i) * speed_squared(i) + 0.5 * dim_ * density(i) * temperature(i);
}

std::vector<double> MomentSet::total_momentum() const {
  std::vector<double> total(static_cast<std::size_t>(dim_), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    const auto u = velocity(i);
    for (std::size_t a = 0; a < total.size(); ++a) total[a] += mass_density(i) * u[a];
  }
  return total;
}

double MomentSet::total_energy() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += energy(i);
  return total;
}

void MomentSet::set_temperature(std::size_t i, double value) {
  if (!(value > 0.0)) throw std::invalid_argument("moment set: temperature must be positive");
  temperatures_.at(i) = value;
}

void MomentSet::set_velocity(std::size_t i, std::span<const double> value) {
  if (value.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("moment set: velocity has wrong dimension");
  }
  for (std::size_t a = 0; a < value.size(); ++a) {
    velocities_.at(i * static_cast<std::size_t>(dim_) + a) = value[a];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

}  // namespace mlb
