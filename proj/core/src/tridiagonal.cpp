#include "mlb/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mlb/error.hpp"

namespace mlb {

std::vector<double> TridiagonalOperator::apply(std::span<const double> f) const {
  const std::size_t n = diag.size();
  if (f.size() != n) throw std::invalid_argument("tridiagonal apply: size mismatch");
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double value = diag[k] * f[k];
    if (k > 0) value -= lower[k - 1] * f[k - 1];
    if (k + 1 < n) value -= upper[k] * f[k + 1];
    out[k] = value;
  }
  return out;
}

TridiagonalOperator assemble_tridiagonal(std::span<const double> maxwellian) {
  const std::size_t n = maxwellian.size();
  if (n < 2) throw std::invalid_argument("assemble_tridiagonal: need at least two cells");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(maxwellian[k] > 0.0) || !std::isfinite(maxwellian[k])) {
      throw std::invalid_argument("assemble_tridiagonal: Maxwellian value at cell " + std::to_string(k) +
                                  " is not positive; assemble from log values instead");
    }
  }
  TridiagonalOperator g;
  g.lower.resize(n - 1);
  g.upper.resize(n - 1);
  g.diag.assign(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double face = 0.5 * (maxwellian[k] + maxwellian[k + 1]);
    g.lower[k] = face / maxwellian[k];
    g.upper[k] = face / maxwellian[k + 1];
    g.diag[k] += face / maxwellian[k];
    g.diag[k + 1] += face / maxwellian[k + 1];
  }
  return g;
}

TridiagonalOperator assemble_tridiagonal_from_log(std::span<const double> log_maxwellian) {
  const std::size_t n = log_maxwellian.size();
  if (n < 2) throw std::invalid_argument("assemble_tridiagonal: need at least two cells");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(log_maxwellian[k])) {
      throw std::invalid_argument("assemble_tridiagonal: non-finite log Maxwellian at cell " + std::to_string(k));
    }
  }
  TridiagonalOperator g;
  g.lower.resize(n - 1);
  g.upper.resize(n - 1);
  g.diag.assign(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double step = log_maxwellian[k + 1] - log_maxwellian[k];
    // F_k / M_k = (1 + M_{k+1}/M_k) / 2 and F_k / M_{k+1} = (M_k/M_{k+1} + 1) / 2.
    const double face_over_left = 0.5 * (1.0 + std::exp(step));
    const double face_over_right = 0.5 * (std::exp(-step) + 1.0);
    g.lower[k] = face_over_left;
    g.upper[k] = face_over_right;
    g.diag[k] += face_over_left;
    g.diag[k + 1] += face_over_right;
  }
  return g;
}

std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || rhs.size() != n || sub.size() + 1 != n || super.size() + 1 != n) {
    throw std::invalid_argument("solve_tridiagonal: inconsistent band sizes");
  }
  std::vector<double> c_prime(n, 0.0);
  std::vector<double> x(n);

  auto check_pivot = [](double pivot, std::size_t row) {
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SolverError(SolverError::Kind::ZeroPivot,
                        "solve_tridiagonal: zero or non-finite pivot at row " + std::to_string(row));
    }
  };

  double pivot = diag[0];
  check_pivot(pivot, 0);
  if (n > 1) c_prime[0] = super[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t k = 1; k < n; ++k) {
    pivot = diag[k] - sub[k - 1] * c_prime[k - 1];
    check_pivot(pivot, k);
    if (k + 1 < n) c_prime[k] = super[k] / pivot;
    x[k] = (rhs[k] - sub[k - 1] * x[k - 1]) / pivot;
  }
  for (std::size_t k = n - 1; k-- > 0;) x[k] -= c_prime[k] * x[k + 1];
  return x;
}

}  // namespace mlb
