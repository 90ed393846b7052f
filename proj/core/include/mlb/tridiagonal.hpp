#pragma once

#include <span>
#include <vector>

namespace mlb {

/// Discrete Fokker-Planck operator G for one mixture Maxwellian M in flux form.
///
/// Row k acts as  -lower[k-1] f[k-1] + diag[k] f[k] - upper[k] f[k+1]  where,
/// with face values F_k = (M_k + M_{k+1}) / 2 and zero flux through both walls,
///   lower[k] = F_k / M_k,  upper[k] = F_k / M_{k+1},  diag[k] = (F_{k-1} + F_k) / M_k.
/// Every column sums to zero, so sum_k (G f)_k = 0 for any f, and G M = 0.
struct TridiagonalOperator {
  std::vector<double> lower;  // N - 1 entries, all >= 0
  std::vector<double> diag;   // N entries, all > 0
  std::vector<double> upper;  // N - 1 entries, all >= 0

  [[nodiscard]] int size() const noexcept { return static_cast<int>(diag.size()); }
  [[nodiscard]] std::vector<double> apply(std::span<const double> f) const;
};

/// Assemble G from point values of M. Throws std::invalid_argument unless
/// every entry is positive and there are at least two cells.
TridiagonalOperator assemble_tridiagonal(std::span<const double> maxwellian);

/// Assemble G from log M. Ratios of neighbouring values are formed from
/// exponent differences, so cells where M itself underflows are handled.
TridiagonalOperator assemble_tridiagonal_from_log(std::span<const double> log_maxwellian);

/// Thomas algorithm for  sub[k-1] x[k-1] + diag[k] x[k] + super[k] x[k+1] = rhs[k]
/// (signed matrix entries; sub and super have N - 1 entries).
/// Throws SolverError on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs);

}  // namespace mlb
