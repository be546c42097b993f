#include "rhwb/field/float_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rhwb/errors.hpp"
#include "rhwb/field/exact_matrix.hpp"

namespace rhwb {

FloatMatrix to_float(const ExactMatrix& m) {
  FloatMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
  return out;
}

std::vector<double> singular_values(const FloatMatrix& m, const SvdOptions& options) {
  if (m.size() == 0) return {};
  if (!m.allFinite()) throw ValidationError("singular_values: matrix has non-finite entries");

  // Orthogonalize columns of a tall matrix; a wide one is handled via its adjoint.
  FloatMatrix a = m.rows() >= m.cols() ? FloatMatrix(m) : FloatMatrix(m.adjoint());
  const Eigen::Index n = a.cols();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  bool converged = n < 2;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const std::complex<double> gamma = a.col(p).dot(a.col(q));
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= eps * std::sqrt(alpha * beta)) continue;
        converged = false;

        const std::complex<double> phase = gamma / mag;
        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        Eigen::VectorXcd ap = a.col(p);
        Eigen::VectorXcd aq = a.col(q) * std::conj(phase);
        a.col(p) = c * ap - s * aq;
        a.col(q) = s * ap + c * aq;
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("singular_values: Jacobi iteration did not converge within " +
                           std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) sigma[static_cast<std::size_t>(j)] = a.col(j).norm();
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

NumericRank numeric_rank(const FloatMatrix& m, double rel_tol, const SvdOptions& options) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw ValidationError("numeric_rank: rel_tol must lie in (0, 1)");
  }
  NumericRank out;
  out.singular_values = singular_values(m, options);
  if (out.singular_values.empty() || out.singular_values.front() == 0.0) return out;
  const double threshold = rel_tol * out.singular_values.front();
  out.rank = static_cast<std::size_t>(std::count_if(out.singular_values.begin(),
                                                    out.singular_values.end(),
                                                    [&](double s) { return s > threshold; }));
  return out;
}

}  // namespace rhwb
