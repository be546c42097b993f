#pragma once

#include <string>
#include <vector>

#include "rhwb/curves/curve.hpp"
#include "rhwb/curves/polynomial.hpp"

namespace rhwb {

/// What the numerator is divided by.
///   y          p(x) dx^w / y
///   y_squared  p(x) dx^w / y^2
///   canonical  F(x,y,z)-form of degree w on a quartic (canonical embedding)
enum class DenominatorClass { y, y_squared, canonical };

std::string to_string(DenominatorClass d);

/// A tagged weight-w differential: numerator over a canonical denominator.
struct Differential {
  int weight = 1;
  DenominatorClass denominator = DenominatorClass::y;
  Polynomial numerator;

  friend bool operator==(const Differential&, const Differential&) = default;
};

/// Tensor product of two differentials (weights add).
Differential operator*(const Differential& a, const Differential& b);

/// Ordered basis of H^0(K^w), w = 1 or 2.
///
/// Hyperelliptic, weight 1: x^i dx/y for i = 0..g-1.
/// Hyperelliptic, weight 2: x^i dx^2/y^2 for i = 0..2g-2, then x^j dx^2/y for
/// j = 0..g-3 (the y^2 class comes first).
/// Quartic, weight 1: x, y, z.  Weight 2: x^2, y^2, z^2, xy, xz, yz.
class DifferentialBasis {
 public:
  DifferentialBasis(Curve curve, int weight, std::vector<Differential> elements);

  const Curve& curve() const { return curve_; }
  int weight() const { return weight_; }
  const std::vector<Differential>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const Differential& operator[](std::size_t i) const { return elements_[i]; }

  /// sum coordinates[i] * element i
  Differential combine(const std::vector<ExactScalar>& coordinates) const;

 private:
  Curve curve_;
  int weight_;
  std::vector<Differential> elements_;
};

DifferentialBasis canonical_basis(const Curve& curve);
DifferentialBasis quadratic_basis(const Curve& curve);

/// Exact coordinates of `d` with respect to `basis`. Throws MembershipError
/// (carrying the unexplained terms) when d is not in the span.
std::vector<ExactScalar> express_in_basis(const Differential& d, const DifferentialBasis& basis);

}  // namespace rhwb
