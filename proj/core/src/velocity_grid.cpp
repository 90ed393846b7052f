#include "mlb/velocity_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlb {

VelocityGrid::VelocityGrid(double v_max, int cells, double offset)
    : v_max_(v_max), offset_(offset), width_(0.0) {
  if (!(v_max > 0.0) || !std::isfinite(v_max)) {
    throw std::invalid_argument("velocity grid: v_max must be positive and finite, got " +
                                std::to_string(v_max));
  }
  if (cells < 4) {
    throw std::invalid_argument("velocity grid: need at least 4 cells for the 3-point stencil, got " +
                                std::to_string(cells));
  }
  width_ = 2.0 * v_max / cells;
  centers_.resize(static_cast<std::size_t>(cells));
  for (int k = 0; k < cells; ++k) {
    centers_[static_cast<std::size_t>(k)] = offset - v_max + (k + 0.5) * width_;
  }
}

VelocityGrid VelocityGrid::shifted(double shift) const {
  return VelocityGrid(v_max_, size(), offset_ + shift);
}

}  // namespace mlb
