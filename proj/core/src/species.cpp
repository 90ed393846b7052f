#include "mlb/species.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlb {

SpeciesSet::SpeciesSet(std::vector<SpeciesSpec> species, double epsilon0, double log_lambda)
    : species_(std::move(species)),
      epsilon0_(epsilon0),
      log_lambda_(species_.size() * species_.size(), std::abs(log_lambda)) {
  validate();
}

SpeciesSet::SpeciesSet(std::vector<SpeciesSpec> species, double epsilon0, std::vector<double> log_lambda)
    : species_(std::move(species)), epsilon0_(epsilon0), log_lambda_(std::move(log_lambda)) {
  if (log_lambda_.size() != species_.size() * species_.size()) {
    throw std::invalid_argument("species set: Coulomb logarithm table must be N x N");
  }
  for (auto& value : log_lambda_) value = std::abs(value);
  validate();
}

void SpeciesSet::validate() const {
  if (species_.empty()) throw std::invalid_argument("species set: at least one species required");
  if (!(epsilon0_ > 0.0)) throw std::invalid_argument("species set: epsilon0 must be positive");
  const std::size_t n = species_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = species_[i];
    if (!(s.mass > 0.0)) {
      throw std::invalid_argument("species " + std::to_string(i + 1) + ": mass must be positive");
    }
    if (!(s.density > 0.0)) {
      throw std::invalid_argument("species " + std::to_string(i + 1) + ": density must be positive");
    }
    if (!std::isfinite(s.charge)) {
      throw std::invalid_argument("species " + std::to_string(i + 1) + ": charge must be finite");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (log_lambda_[i * n + j] != log_lambda_[j * n + i]) {
        throw std::invalid_argument("species set: Coulomb logarithm table is not symmetric at (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
}

std::vector<double> SpeciesSet::masses() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& s : species_) out.push_back(s.mass);
  return out;
}

std::vector<double> SpeciesSet::densities() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& s : species_) out.push_back(s.density);
  return out;
}

}  // namespace mlb
