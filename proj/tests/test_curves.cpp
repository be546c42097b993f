#include <gtest/gtest.h>

#include "rhwb/curves/differentials.hpp"
#include "rhwb/errors.hpp"
#include "rhwb/field/exact_matrix.hpp"
#include "support/oracles.hpp"

using namespace rhwb;

namespace {

Differential hyper(std::vector<long> coeffs, int weight, DenominatorClass den) {
  std::vector<ExactScalar> c(coeffs.begin(), coeffs.end());
  return {weight, den, Polynomial::univariate(c)};
}

std::vector<double> unit_monomial(int degree) {
  std::vector<double> p(static_cast<std::size_t>(degree) + 1, 0.0);
  p.back() = 1.0;
  return p;
}

ExactMatrix numerator_matrix(const DifferentialBasis& basis) {
  // One row per element, one column per (class, monomial) pair.
  std::vector<std::pair<DenominatorClass, Monomial>> keys;
  for (const auto& e : basis.elements())
    for (const auto& [m, c] : e.numerator.terms())
      if (std::find(keys.begin(), keys.end(), std::pair{e.denominator, m}) == keys.end()) keys.emplace_back(e.denominator, m);
  ExactMatrix out(basis.size(), keys.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t k = 0; k < keys.size(); ++k)
      if (basis[r].denominator == keys[k].first) out(r, k) = basis[r].numerator.coefficient(keys[k].second);
  return out;
}

}  // namespace

TEST(HyperellipticCurve, ValidatesInput) {
  EXPECT_THROW(HyperellipticCurve({0, 1, 2, 3}), ValidationError);
  EXPECT_THROW(HyperellipticCurve({0, 1, 2, 3, 3}), ValidationError);
  EXPECT_EQ(HyperellipticCurve({0, 1, 2, 3, 4}).genus(), 2);
  EXPECT_EQ(HyperellipticCurve({0, 1, 2, 3, 4, 5}).genus(), 2);
  EXPECT_EQ(HyperellipticCurve::consecutive(5).genus(), 5);
  EXPECT_TRUE(HyperellipticCurve::consecutive(3).odd_degree());
}

TEST(HyperellipticCurve, ExpandsF) {
  const auto f = HyperellipticCurve({0, 1, 2, 3, 4}).f_coefficients();
  const std::vector<ExactScalar> expect{0, 24, -50, 35, -10, 1};
  EXPECT_EQ(f, expect);
}

TEST(PlaneQuartic, UserQuarticNeedsAssertion) {
  std::array<ExactScalar, 15> c{};
  c[0] = 1;
  c[4] = 1;
  c[14] = 1;
  EXPECT_THROW(PlaneQuartic::user(c, false), ValidationError);
  EXPECT_EQ(PlaneQuartic::user(c, true).smoothness_certificate(), "user-asserted");
  EXPECT_EQ(PlaneQuartic::fermat().smoothness_certificate(), "builtin:fermat");
  EXPECT_EQ(Curve(PlaneQuartic::klein()).genus(), 3);
}

TEST(Bases, DimensionsForEveryCurve) {
  for (int g = 2; g <= 6; ++g) {
    const Curve c = HyperellipticCurve::consecutive(g);
    EXPECT_EQ(canonical_basis(c).size(), static_cast<std::size_t>(g));
    EXPECT_EQ(quadratic_basis(c).size(), static_cast<std::size_t>(3 * g - 3));
  }
  for (const Curve c : {Curve(PlaneQuartic::fermat()), Curve(PlaneQuartic::klein())}) {
    EXPECT_EQ(canonical_basis(c).size(), 3u);
    EXPECT_EQ(quadratic_basis(c).size(), 6u);
  }
}

TEST(Bases, GenusTwoQuadraticClasses) {
  const auto b = quadratic_basis(HyperellipticCurve::consecutive(2));
  for (const auto& e : b.elements()) EXPECT_EQ(e.denominator, DenominatorClass::y_squared);
}

TEST(Bases, GenusThreeQuadraticClasses) {
  const auto b = quadratic_basis(HyperellipticCurve::consecutive(3));
  int y2 = 0, y1 = 0;
  for (const auto& e : b.elements()) (e.denominator == DenominatorClass::y_squared ? y2 : y1)++;
  EXPECT_EQ(y2, 5);
  EXPECT_EQ(y1, 1);
  EXPECT_EQ(b[5].denominator, DenominatorClass::y);
}

TEST(Bases, ElementsAreIndependent) {
  for (int g = 2; g <= 6; ++g) {
    const Curve c = HyperellipticCurve::consecutive(g);
    for (const auto& basis : {canonical_basis(c), quadratic_basis(c)}) {
      EXPECT_EQ(exact_rank(numerator_matrix(basis)), basis.size());
    }
  }
  const Curve f = PlaneQuartic::fermat();
  EXPECT_EQ(exact_rank(numerator_matrix(quadratic_basis(f))), 6u);
}

TEST(Holomorphy, CanonicalBasisHasNonnegativeOrders) {
  for (int g = 2; g <= 6; ++g) {
    const auto curve = HyperellipticCurve::consecutive(g);
    for (int i = 0; i < g; ++i) {
      const auto p = unit_monomial(i);
      EXPECT_NEAR(oracle::local_order(curve, p, 1, 1, -1), 2.0 * g - 2.0 - 2.0 * i, 0.05) << "g=" << g << " i=" << i;
      for (int k = 0; k < curve.degree(); ++k) {
        EXPECT_GT(oracle::local_order(curve, p, 1, 1, k), -0.05) << "g=" << g << " i=" << i << " branch " << k;
      }
    }
    // x^g dx/y has a pole at infinity, so the basis cannot be extended.
    EXPECT_LT(oracle::local_order(curve, unit_monomial(g), 1, 1, -1), -1.5);
  }
}

TEST(Holomorphy, QuadraticBasisHasNonnegativeOrders) {
  for (int g = 2; g <= 6; ++g) {
    const auto curve = HyperellipticCurve::consecutive(g);
    const auto basis = quadratic_basis(curve);
    for (const auto& e : basis.elements()) {
      const int deg = e.numerator.degree();
      const int yp = e.denominator == DenominatorClass::y_squared ? 2 : 1;
      EXPECT_GT(oracle::local_order(curve, unit_monomial(deg), 2, yp, -1), -0.05);
      for (int k = 0; k < curve.degree(); ++k) EXPECT_GT(oracle::local_order(curve, unit_monomial(deg), 2, yp, k), -0.05);
    }
    EXPECT_LT(oracle::local_order(curve, unit_monomial(2 * g - 1), 2, 2, -1), -1.5);
    EXPECT_LT(oracle::local_order(curve, unit_monomial(g - 2), 2, 1, -1), -0.5);
  }
}

TEST(ExpressInBasis, MonomialExamples) {
  const Curve g2 = HyperellipticCurve::consecutive(2);
  const auto w1 = canonical_basis(g2);
  const std::vector<ExactScalar> e1{0, 1, 0};
  EXPECT_EQ(express_in_basis(w1[0] * w1[1], quadratic_basis(g2)), e1);

  const Curve g3 = HyperellipticCurve::consecutive(3);
  const auto w3 = canonical_basis(g3);
  const std::vector<ExactScalar> e2{0, 0, 1, 0, 0, 0};
  EXPECT_EQ(express_in_basis(w3[1] * w3[1], quadratic_basis(g3)), e2);

  const Curve fermat = PlaneQuartic::fermat();
  const auto wf = canonical_basis(fermat);
  const auto coords = express_in_basis(wf[0] * wf[1], quadratic_basis(fermat));
  const std::vector<ExactScalar> e3{0, 0, 0, 1, 0, 0};
  EXPECT_EQ(coords, e3);
}

TEST(ExpressInBasis, RoundTripsThroughCombine) {
  const Curve c = HyperellipticCurve::consecutive(4);
  const auto q = quadratic_basis(c);
  for (const auto cls : {DenominatorClass::y_squared, DenominatorClass::y}) {
    std::vector<ExactScalar> coords(q.size());
    for (std::size_t k = 0; k < q.size(); ++k)
      if (q[k].denominator == cls) coords[k] = ExactScalar::from_parts(static_cast<long>(k) - 3, 2, 1, 3);
    EXPECT_EQ(express_in_basis(q.combine(coords), q), coords);
  }
}

TEST(ExpressInBasis, MembershipFailureCarriesResidual) {
  const Curve c = HyperellipticCurve::consecutive(2);
  try {
    express_in_basis(hyper({0, 0, 0, 0, 1}, 2, DenominatorClass::y_squared), quadratic_basis(c));
    FAIL() << "expected MembershipError";
  } catch (const MembershipError& e) {
    EXPECT_FALSE(e.residual().empty());
  }
  EXPECT_THROW(express_in_basis(hyper({1}, 2, DenominatorClass::y), quadratic_basis(c)), MembershipError);
}
