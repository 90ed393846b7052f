#pragma once

#include <vector>

#include "mlb/velocity_grid.hpp"

namespace mlb {

/// Natural log of the 1-D Maxwellian n (2 pi theta)^{-1/2} exp(-(v-u)^2 / (2 theta))
/// at every cell center. Finite wherever the Maxwellian itself would underflow.
/// Throws std::invalid_argument for n <= 0 or theta <= 0.
std::vector<double> log_maxwellian(double n, double u, double theta, const VelocityGrid& grid);

/// Point values of the same Maxwellian (exponentiated log_maxwellian).
std::vector<double> maxwellian(double n, double u, double theta, const VelocityGrid& grid);

}  // namespace mlb
