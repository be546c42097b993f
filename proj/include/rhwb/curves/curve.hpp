#pragma once

#include <array>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "rhwb/curves/polynomial.hpp"
#include "rhwb/field/gaussian_rational.hpp"

namespace rhwb {

/// y^2 = f(x) = prod (x - lambda_k), stored by its finite branch points.
/// Odd degree 2g+1 has one more branch point at infinity; even degree 2g+2
/// has two points over infinity.
class HyperellipticCurve {
 public:
  explicit HyperellipticCurve(std::vector<ExactScalar> branch_points);

  /// Branch points 0, 1, ..., 2g (odd model).
  static HyperellipticCurve consecutive(int genus);

  const std::vector<ExactScalar>& branch_points() const { return branch_points_; }
  int genus() const { return genus_; }
  int degree() const { return static_cast<int>(branch_points_.size()); }
  bool odd_degree() const { return degree() % 2 == 1; }

  /// Coefficients of f in ascending powers of x.
  std::vector<ExactScalar> f_coefficients() const;
  std::vector<std::complex<double>> numeric_branch_points() const;

  friend bool operator==(const HyperellipticCurve&, const HyperellipticCurve&) = default;

 private:
  std::vector<ExactScalar> branch_points_;
  int genus_ = 0;
};

/// A smooth plane quartic F(x, y, z) = 0 (genus 3, canonically embedded).
class PlaneQuartic {
 public:
  enum class Family { fermat, klein, user };

  /// x^4 + y^4 + z^4
  static PlaneQuartic fermat();
  /// x^3 y + y^3 z + z^3 x
  static PlaneQuartic klein();
  /// Exact smoothness testing is out of reach here, so user quartics are only
  /// accepted with an explicit assertion that is echoed into every report.
  static PlaneQuartic user(const std::array<ExactScalar, 15>& coefficients,
                           bool smoothness_asserted);

  /// Degree-4 monomials in the order used by coefficients(): descending x
  /// exponent, then descending y exponent.
  static const std::array<Monomial, 15>& monomial_order();

  const std::array<ExactScalar, 15>& coefficients() const { return coefficients_; }
  Family family() const { return family_; }
  Polynomial form() const;
  std::string smoothness_certificate() const;
  int genus() const { return 3; }

  friend bool operator==(const PlaneQuartic&, const PlaneQuartic&) = default;

 private:
  PlaneQuartic(std::array<ExactScalar, 15> coefficients, Family family);

  std::array<ExactScalar, 15> coefficients_;
  Family family_;
};

/// Either explicit model; all downstream operations take this.
class Curve {
 public:
  Curve(HyperellipticCurve c) : model_(std::move(c)) {}  // NOLINT
  Curve(PlaneQuartic c) : model_(std::move(c)) {}        // NOLINT

  int genus() const;
  bool is_hyperelliptic() const { return std::holds_alternative<HyperellipticCurve>(model_); }
  const HyperellipticCurve& hyperelliptic() const { return std::get<HyperellipticCurve>(model_); }
  const PlaneQuartic& quartic() const { return std::get<PlaneQuartic>(model_); }
  std::string describe() const;

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  std::variant<HyperellipticCurve, PlaneQuartic> model_;
};

}  // namespace rhwb
