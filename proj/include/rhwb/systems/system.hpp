#pragma once

#include <cstdint>
#include <vector>

#include "rhwb/curves/curve.hpp"
#include "rhwb/field/exact_matrix.hpp"
#include "rhwb/systems/lie_algebra.hpp"

namespace rhwb {

/// delta = sum_j e_j (x) (sum_i coefficients(j, i) omega_i), with omega_i the
/// canonical basis of the curve. Rows index the Lie algebra basis, columns
/// the holomorphic differentials.
class DifferentialSystem {
 public:
  DifferentialSystem(Curve curve, LieAlgebra algebra, ExactMatrix coefficients);

  const Curve& curve() const { return curve_; }
  const LieAlgebra& algebra() const { return algebra_; }
  const ExactMatrix& coefficients() const { return coefficients_; }

  /// Coefficient matrix of the system conjugated by an invertible 2x2 matrix
  /// S (B_i -> S B_i S^-1). Requires the sl2 algebra.
  DifferentialSystem conjugated(const ExactMatrix& s) const;

 private:
  Curve curve_;
  LieAlgebra algebra_;
  ExactMatrix coefficients_;
};

/// sum_j functional_j * row_j: the contraction of delta against a linear
/// form on the Lie algebra, as coordinates in H^0(K).
std::vector<ExactScalar> contract(const DifferentialSystem& system,
                                  const std::vector<ExactScalar>& functional);

struct DyadVerdict {
  bool is_dyad = false;
  std::size_t rank_of_coefficients = 0;
};

/// delta has the shape B (x) omega iff its coefficient matrix has rank <= 1.
DyadVerdict dyad_detect(const DifferentialSystem& system);

/// Integer coefficients uniform in [-bound, bound], reproducible from `seed`.
DifferentialSystem sample_system(const Curve& curve, const LieAlgebra& algebra,
                                 std::uint64_t seed, long bound);

struct DimensionReport {
  int genus = 0;
  long d = 0;
  long c = 0;
  long dim_character_variety = 0;
  long dim_syst = 0;
  long dim_teichmuller = 0;
  long gauge_dimension = 0;
};

/// dim Xi = 2(g-1)d + 2gc and dim Syst = (g-1)(d+3) + gc; also checks
/// dim Syst = (3g-3) + g(d+c) - d, i.e. Teichmuller directions plus the
/// system coefficients modulo the constant adjoint gauge action.
DimensionReport dimension_report(int genus, const LieAlgebra& algebra);

}  // namespace rhwb
