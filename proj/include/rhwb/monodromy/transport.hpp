#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "rhwb/monodromy/loops.hpp"
#include "rhwb/systems/system.hpp"

namespace rhwb {

using Mat2 = Eigen::Matrix2cd;
using ComplexExt = std::complex<long double>;
using Mat2Ext = Eigen::Matrix<ComplexExt, 2, 2>;

/// sl2 system in floating point: B_i pairs with omega_i = x^i dx / y.
struct NumericSystem {
  std::vector<Mat2> coefficients;

  static NumericSystem from(const DifferentialSystem& system);

  /// sum_i B_i x^i / y
  Mat2 connection(Complex x, Complex y) const;
};

struct OdeOptions {
  /// Local error target (mixed absolute/relative).
  double tol = 1e-12;
  /// Smallest step in the per-segment parameter before giving up.
  double min_step = 1e-12;
  std::size_t max_steps = 20'000'000;
};

/// Accepted step endpoints per polyline segment, in the segment parameter s in (0, 1].
using StepMesh = std::vector<std::vector<double>>;

struct Transport {
  Mat2 matrix = Mat2::Identity();
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  StepMesh mesh;
};

/// Solves dY/dx = A(x) Y with A = sum_i B_i x^i / y along the lifted loop,
/// Y = I at the start, using a Dormand-Prince 5(4) pair with PI step control.
/// y is continued by picking, at every stage, the square root closest to
/// the value at the start of the step; a step whose stages move y by |y| or
/// more is rejected. Throws NumericalError on step underflow, non-finite
/// values, or a lift that does not close on its starting sheet.
Transport integrate_loop(const NumericCurve& curve, const NumericSystem& system, const Loop& loop,
                         Complex base_y, const OdeOptions& options = {});

/// Same integrator driven by a fixed step mesh (from a nearby run). The
/// result is a smooth function of the curve and system data, which is what
/// finite differences need.
Transport integrate_loop_on_mesh(const NumericCurve& curve, const NumericSystem& system,
                                 const Loop& loop, Complex base_y, const StepMesh& mesh);

/// Mesh replay carried out in long double. Finite differences of the result
/// at steps near 1e-6 stay well above its roundoff.
Mat2Ext integrate_loop_on_mesh_extended(const NumericCurve& curve, const NumericSystem& system,
                                        const Loop& loop, Complex base_y, const StepMesh& mesh);

}  // namespace rhwb
