#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlb/velocity_grid.hpp"

namespace mlb {

/// Moments of one gridded (d = 1) distribution.
struct SpeciesMoments {
  double density = 0.0;
  double mass_density = 0.0;
  double velocity = 0.0;
  double temperature = 0.0;
  double energy = 0.0;
};

/// Midpoint-rule moments of a cell-centered distribution.
/// Throws SolverError if the computed density or temperature is not positive.
SpeciesMoments moments_of(std::span<const double> f, const VelocityGrid& grid, double mass);

/// Per-species (n, rho, u, T) at one time level with d-component velocities.
///
/// Energy and |u|^2 are derived on demand, so E = rho|u|^2/2 + d n T / 2 holds
/// by construction.
class MomentSet {
 public:
  /// `velocities` is row-major N x dim. Throws std::invalid_argument on
  /// non-positive mass, density or temperature, or mismatched sizes.
  MomentSet(int dim, std::vector<double> masses, std::vector<double> densities,
            std::vector<double> velocities, std::vector<double> temperatures);

  /// d = 1 convenience: one velocity per species.
  static MomentSet from_scalar(std::vector<double> masses, std::vector<double> densities,
                               std::vector<double> velocities, std::vector<double> temperatures);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return masses_.size(); }

  [[nodiscard]] double mass(std::size_t i) const { return masses_.at(i); }
  [[nodiscard]] double density(std::size_t i) const { return densities_.at(i); }
  [[nodiscard]] double mass_density(std::size_t i) const { return masses_.at(i) * densities_.at(i); }
  [[nodiscard]] double temperature(std::size_t i) const { return temperatures_.at(i); }
  [[nodiscard]] std::span<const double> velocity(std::size_t i) const;
  [[nodiscard]] double speed_squared(std::size_t i) const;
  [[nodiscard]] double energy(std::size_t i) const;

  [[nodiscard]] std::span<const double> masses() const noexcept { return masses_; }
  [[nodiscard]] std::span<const double> densities() const noexcept { return densities_; }
  [[nodiscard]] std::span<const double> temperatures() const noexcept { return temperatures_; }
  [[nodiscard]] std::span<const double> velocities() const noexcept { return velocities_; }

  /// Sum_i rho_i u_i.
  [[nodiscard]] std::vector<double> total_momentum() const;
  [[nodiscard]] double total_energy() const;

  /// Temperature must stay positive; throws std::invalid_argument otherwise.
  void set_temperature(std::size_t i, double value);
  void set_velocity(std::size_t i, std::span<const double> value);

 private:
  int dim_;
  std::vector<double> masses_;
  std::vector<double> densities_;
  std::vector<double> velocities_;
  std::vector<double> temperatures_;
};

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);

}  // namespace mlb
