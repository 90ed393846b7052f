#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mlb {

/// Per-species physical data in nondimensional units.
struct SpeciesSpec {
  double mass = 1.0;
  double charge = 1.0;
  double density = 1.0;
  std::string name;
};

/// Immutable collection of species plus the constants shared between them:
/// vacuum permittivity and a symmetric table of Coulomb logarithms.
class SpeciesSet {
 public:
  /// Uniform Coulomb logarithm for every pair.
  SpeciesSet(std::vector<SpeciesSpec> species, double epsilon0, double log_lambda);
  /// Row-major N x N table; must be symmetric. Only |log Lambda| is used.
  SpeciesSet(std::vector<SpeciesSpec> species, double epsilon0, std::vector<double> log_lambda);

  [[nodiscard]] std::size_t size() const noexcept { return species_.size(); }
  [[nodiscard]] const SpeciesSpec& operator[](std::size_t i) const { return species_.at(i); }
  [[nodiscard]] const std::vector<SpeciesSpec>& species() const noexcept { return species_; }
  [[nodiscard]] double epsilon0() const noexcept { return epsilon0_; }
  [[nodiscard]] double log_lambda(std::size_t i, std::size_t j) const {
    return log_lambda_.at(i * size() + j);
  }
  [[nodiscard]] double mass(std::size_t i) const { return species_.at(i).mass; }
  [[nodiscard]] std::vector<double> masses() const;
  [[nodiscard]] std::vector<double> densities() const;

 private:
  void validate() const;

  std::vector<SpeciesSpec> species_;
  double epsilon0_;
  std::vector<double> log_lambda_;
};

}  // namespace mlb
