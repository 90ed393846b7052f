#pragma once

#include <span>
#include <vector>

namespace mlb {

/// Uniform cell-centered 1-D velocity grid on [c - v_max, c + v_max].
///
/// Cell k (0-based) has center  c - v_max + (k + 1/2) h  with h = 2 v_max / N.
/// The offset c is zero for ordinary use; it exists so translated copies of a
/// grid can be formed exactly.
class VelocityGrid {
 public:
  /// Throws std::invalid_argument for v_max <= 0 or cells < 4.
  VelocityGrid(double v_max, int cells, double offset = 0.0);

  [[nodiscard]] double v_max() const noexcept { return v_max_; }
  [[nodiscard]] double offset() const noexcept { return offset_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(centers_.size()); }
  [[nodiscard]] double width() const noexcept { return width_; }
  [[nodiscard]] double center(int k) const { return centers_.at(static_cast<std::size_t>(k)); }
  [[nodiscard]] std::span<const double> centers() const noexcept { return centers_; }

  /// Same grid translated by `shift` in velocity.
  [[nodiscard]] VelocityGrid shifted(double shift) const;

  friend bool operator==(const VelocityGrid&, const VelocityGrid&) = default;

 private:
  double v_max_;
  double offset_;
  double width_;
  std::vector<double> centers_;
};

inline VelocityGrid build_grid(double v_max, int cells) { return VelocityGrid(v_max, cells); }

}  // namespace mlb
