#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "rhwb/field/gaussian_rational.hpp"

namespace rhwb {

/// Exponents of x, y, z.
using Monomial = std::array<int, 3>;

/// Sparse polynomial in x, y, z over Q(i). Univariate polynomials in x use
/// monomials {k, 0, 0}. Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial monomial(const Monomial& m, const ExactScalar& coefficient = 1);
  /// sum coefficients[k] x^k
  static Polynomial univariate(const std::vector<ExactScalar>& coefficients);

  const std::map<Monomial, ExactScalar>& terms() const { return terms_; }
  ExactScalar coefficient(const Monomial& m) const;
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree; -1 for the zero polynomial.
  int degree() const;

  void add_term(const Monomial& m, const ExactScalar& coefficient);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const ExactScalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const ExactScalar& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::complex<double> evaluate(std::complex<double> x, std::complex<double> y = 0.0,
                                std::complex<double> z = 1.0) const;

 private:
  std::map<Monomial, ExactScalar> terms_;
};

}  // namespace rhwb
