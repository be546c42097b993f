#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rhwb/curves/curve.hpp"

namespace rhwb {

using Complex = std::complex<double>;

/// Floating-point view of an odd-degree hyperelliptic curve y^2 = prod (x - lambda_k).
struct NumericCurve {
  std::vector<Complex> branch_points;

  static NumericCurve from(const HyperellipticCurve& curve);

  int genus() const { return (static_cast<int>(branch_points.size()) - 1) / 2; }
  Complex f(Complex x) const;
};

/// Root of f(x) closest to `reference`: continues y = sqrt(f) along a path.
Complex continue_sheet(const NumericCurve& curve, Complex x, Complex reference);

/// A closed polyline in the x-plane from the base point. `sheets` holds the
/// value of y reached by continuation at each vertex, so a loop carries its
/// own lift and any later sheet jump is detectable.
struct Loop {
  std::string name;
  /// Lasso indices (into LoopSystem::ordered_branch_points) traversed in order.
  std::vector<int> lasso_word;
  std::vector<Complex> vertices;
  std::vector<Complex> sheets;
};

/// Standard generators a1, b1, ..., ag, bg of pi_1 at a base point below
/// the branch points.
///
/// Each lasso s_k runs straight from the base point toward branch point k
/// (in order of increasing angle seen from the base point), circles it
/// counterclockwise on a 16-gon whose edges keep `clearance`, and returns.
/// With u_k = s_0 s_1 ... s_2k the loops are
///   b_k = s_{2k+1} s_{2k+2}            (encircles one consecutive pair)
///   a_k = s_{2k+1} s_0 s_1 ... s_{2k}
/// for k = 0..g-1. Because transport composes in reverse path order, these
/// satisfy A1 B1 A1^-1 B1^-1 ... Ag Bg Ag^-1 Bg^-1 = I exactly, which reduces
/// to (s_0 ... s_2g)^2 = 1 (the loop around the branch point at infinity,
/// traversed twice).
struct LoopSystem {
  Complex base_point;
  Complex base_y;
  double clearance = 0.0;
  double lasso_radius = 0.0;
  std::vector<Complex> ordered_branch_points;
  std::vector<Loop> loops;
};

inline constexpr int kLassoPolygonSides = 16;

LoopSystem build_loops(const NumericCurve& curve, double clearance);

/// Recomputes the sheet annotations of `loop` by continuation from `base_y`.
void annotate_sheets(Loop& loop, const NumericCurve& curve, Complex base_y);

/// Same loop traversed backwards.
Loop reverse_loop(const Loop& loop);

/// Inserts the midpoint of every segment.
Loop refine_loop(const Loop& loop, const NumericCurve& curve, Complex base_y);

/// Smallest distance from any vertex of any loop to any branch point.
double min_vertex_clearance(const LoopSystem& loops, const NumericCurve& curve);

/// Distance from point p to the segment [a, b].
double segment_distance(Complex p, Complex a, Complex b);

}  // namespace rhwb
