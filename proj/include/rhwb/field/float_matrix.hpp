#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace rhwb {

class ExactMatrix;

using FloatMatrix = Eigen::MatrixXcd;

/// Converts every entry to complex double (rounded).
FloatMatrix to_float(const ExactMatrix& m);

struct SvdOptions {
  /// Full Jacobi sweeps allowed before giving up.
  int max_sweeps = 60;
};

/// Singular values in descending order, from a one-sided (Hestenes) Jacobi
/// iteration. Throws ConvergenceError when the sweep budget runs out.
std::vector<double> singular_values(const FloatMatrix& m, const SvdOptions& options = {});

struct NumericRank {
  std::size_t rank = 0;
  std::vector<double> singular_values;
};

inline constexpr double kDefaultRankTolerance = 1e-10;

/// Counts singular values above rel_tol * sigma_max. Requires finite entries
/// and rel_tol in (0, 1).
NumericRank numeric_rank(const FloatMatrix& m, double rel_tol = kDefaultRankTolerance,
                         const SvdOptions& options = {});

}  // namespace rhwb
