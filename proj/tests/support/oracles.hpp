#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rhwb/curves/curve.hpp"
#include "rhwb/field/exact_matrix.hpp"
#include "rhwb/monodromy/loops.hpp"

namespace rhwb::oracle {

using Complex = std::complex<double>;

/// A point on the curve in the affine chart z = 1.
struct CurvePoint {
  Complex x;
  Complex y;
};

/// `count` pseudo-random points: x near the unit circle, y a random root of
/// f (hyperelliptic) or of F(x, y, 1) (quartic, found from a companion matrix).
std::vector<CurvePoint> random_points(const Curve& curve, std::size_t count, std::uint64_t seed);

/// Evaluation-interpolation rank of H^0(K) (x) W -> H^0(K^2): every product
/// omega_i * w_k is evaluated in the frame dx^2/y^2 (hyperelliptic) or
/// (dx/F_y)^2 (quartic) at 3g-3 random points, after checking that the
/// quadratic basis evaluations there are invertible. Returns the numeric
/// rank at rel_tol of the row-normalized product matrix. The differential
/// algebra of the library is not used.
std::size_t sampled_theta_rank(const Curve& curve, const std::vector<std::vector<ExactScalar>>& w,
                               double rel_tol, std::uint64_t seed);

/// Vanishing order of p(x) dx^w / y^e at a branch point or at infinity of
/// the odd hyperelliptic model, estimated from |value/dt^w| at two local
/// parameters t. `branch` < 0 means the point at infinity.
double local_order(const HyperellipticCurve& curve, const std::vector<double>& p, int weight, int y_power,
                   int branch);

/// Integral of sum_i c_i x^i dx / y along a lifted loop, by adaptive
/// Gauss-Kronrod quadrature on sub-intervals short compared with the
/// distance to the branch points.
Complex loop_period(const NumericCurve& curve, const Loop& loop, Complex base_y, const std::vector<Complex>& c);

/// Rank by brute force over minors (small matrices only).
std::size_t minor_rank(const ExactMatrix& m);

}  // namespace rhwb::oracle
