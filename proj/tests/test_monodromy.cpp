#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rhwb/errors.hpp"
#include "rhwb/monodromy/representation.hpp"
#include "support/oracles.hpp"

using namespace rhwb;

namespace {

HyperellipticCurve spread_curve() { return HyperellipticCurve({0, 1, 20, 60, 120}); }
HyperellipticCurve squares_curve() { return HyperellipticCurve({0, 1, 4, 9, 16}); }

double max_entry_diff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

double point_segment(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  double t = len2 == 0.0 ? 0.0 : ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Total turning of the polyline around p, in full turns.
int winding_number(const std::vector<Complex>& poly, Complex p) {
  double total = 0.0;
  for (std::size_t k = 1; k < poly.size(); ++k) total += std::arg((poly[k] - p) / (poly[k - 1] - p));
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

struct Setup {
  NumericCurve curve;
  LoopSystem loops;
};

Setup setup(const HyperellipticCurve& c, double clearance = 0.25) {
  auto curve = NumericCurve::from(c);
  auto loops = build_loops(curve, clearance);
  return {std::move(curve), std::move(loops)};
}

MonodromyRepresentation synthetic(std::vector<Mat2> m) {
  MonodromyRepresentation rep;
  rep.relation_residual = relation_residual(m);
  for (const auto& a : m) rep.det_residuals.push_back(std::abs(a.determinant() - 1.0));
  rep.matrices = std::move(m);
  rep.valid = true;
  return rep;
}

Mat2 mat(Complex a, Complex b, Complex c, Complex d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(BuildLoops, GenusTwoGeometry) {
  const auto s = setup(HyperellipticCurve::consecutive(2), 0.2);
  ASSERT_EQ(s.loops.loops.size(), 4u);
  EXPECT_GE(min_vertex_clearance(s.loops, s.curve), 0.2);
  for (const auto& loop : s.loops.loops) {
    SCOPED_TRACE(loop.name);
    EXPECT_EQ(loop.vertices.front(), s.loops.base_point);
    EXPECT_EQ(loop.vertices.back(), s.loops.base_point);
    ASSERT_EQ(loop.sheets.size(), loop.vertices.size());
    EXPECT_LT(std::abs(loop.sheets.back() - loop.sheets.front()), 1e-9 * std::abs(loop.sheets.front()));
    for (std::size_t k = 1; k < loop.vertices.size(); ++k)
      for (const auto& lam : s.curve.branch_points)
        EXPECT_GE(point_segment(lam, loop.vertices[k - 1], loop.vertices[k]), 0.2 * (1 - 1e-12));
  }
}

TEST(BuildLoops, GenusThreeHasSixLoops) {
  const auto s = setup(HyperellipticCurve::consecutive(3));
  ASSERT_EQ(s.loops.loops.size(), 6u);
  const std::vector<std::string> names{"a1", "b1", "a2", "b2", "a3", "b3"};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(s.loops.loops[k].name, names[k]);
}

TEST(BuildLoops, WindingNumbersMatchTheGenerators) {
  for (int g = 2; g <= 4; ++g) {
    const auto s = setup(HyperellipticCurve::consecutive(g));
    const auto& ordered = s.loops.ordered_branch_points;
    for (int k = 0; k < g; ++k) {
      const auto& a = s.loops.loops[static_cast<std::size_t>(2 * k)];
      const auto& b = s.loops.loops[static_cast<std::size_t>(2 * k + 1)];
      for (int p = 0; p < static_cast<int>(ordered.size()); ++p) {
        const Complex lam = ordered[static_cast<std::size_t>(p)];
        EXPECT_EQ(winding_number(b.vertices, lam), (p == 2 * k + 1 || p == 2 * k + 2) ? 1 : 0) << b.name << " " << p;
        EXPECT_EQ(winding_number(a.vertices, lam), p <= 2 * k + 1 ? 1 : 0) << a.name << " " << p;
      }
    }
  }
}

TEST(BuildLoops, IndependentLiftCloses) {
  const auto s = setup(HyperellipticCurve::consecutive(3));
  for (const auto& loop : s.loops.loops) {
    Complex y = s.loops.base_y;
    for (std::size_t k = 1; k < loop.vertices.size(); ++k) {
      for (int q = 1; q <= 200; ++q) {
        const Complex x = loop.vertices[k - 1] + (loop.vertices[k] - loop.vertices[k - 1]) * (q / 200.0);
        const Complex r = std::sqrt(s.curve.f(x));
        y = std::abs(r - y) < std::abs(r + y) ? r : -r;
      }
      EXPECT_LT(std::abs(y - loop.sheets[k]), 1e-6 * std::abs(y)) << loop.name << " vertex " << k;
    }
  }
}

TEST(BuildLoops, Validates) {
  const auto curve = NumericCurve::from(HyperellipticCurve({0, 1, 2, 3, ExactScalar::from_parts(33, 10, 0, 1)}));
  EXPECT_THROW(build_loops(curve, 0.25), ValidationError);
  EXPECT_NO_THROW(build_loops(curve, 0.1));
  EXPECT_THROW(build_loops(NumericCurve::from(HyperellipticCurve::consecutive(2)), 0.0), ValidationError);
  EXPECT_THROW(build_loops(NumericCurve::from(HyperellipticCurve({0, 1, 2, 3, 4, 5})), 0.1), ValidationError);
}

TEST(Transport, ZeroSystemIsIdentity) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto sys = NumericSystem::from(DifferentialSystem(c, LieAlgebra::sl2(), ExactMatrix(3, 2)));
  const auto rep = monodromy(s.curve, sys, s.loops);
  EXPECT_TRUE(rep.valid);
  EXPECT_EQ(rep.relation_residual, 0.0);
  for (const auto& m : rep.matrices) EXPECT_LT(max_entry_diff(m, Mat2::Identity()), 1e-15);
}

TEST(Transport, RejectsNonSl2Systems) {
  const auto c = squares_curve();
  EXPECT_THROW(NumericSystem::from(sample_system(c, LieAlgebra::gl2(), 1, 1)), ValidationError);
  EXPECT_THROW(NumericSystem::from(sample_system(HyperellipticCurve({0, 1, 2, 3, 4, 5}), LieAlgebra::sl2(), 1, 1)),
               ValidationError);
}

TEST(Transport, AbelianCaseMatchesQuadrature) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const std::vector<std::vector<long>> cases{{1, 0}, {0, 1}, {1, -1}, {2, 1}};
  for (const auto& row : cases) {
    ExactMatrix m(3, 2);
    m(0, 0) = ExactScalar(row[0]) * ExactScalar::from_parts(1, 4, 1, 8);
    m(0, 1) = ExactScalar(row[1]) * ExactScalar::from_parts(1, 4, 1, 8);
    const auto sys = NumericSystem::from(DifferentialSystem(c, LieAlgebra::sl2(), m));
    const std::vector<Complex> coeffs{m(0, 0).to_complex(), m(0, 1).to_complex()};
    for (const auto& loop : s.loops.loops) {
      const auto t = integrate_loop(s.curve, sys, loop, s.loops.base_y);
      const Complex period = oracle::loop_period(s.curve, loop, s.loops.base_y, coeffs);
      // Compare the exponent: the off-diagonal entries vanish and the
      // diagonal is exp(+-period) up to 2 pi i.
      EXPECT_LT(std::abs(t.matrix(0, 1)) + std::abs(t.matrix(1, 0)), 1e-12);
      const Complex logged = std::log(t.matrix(0, 0));
      const double turns = std::round((period - logged).imag() / (2.0 * std::numbers::pi));
      EXPECT_LT(std::abs(logged + Complex(0, 2.0 * std::numbers::pi * turns) - period), 1e-8) << loop.name;
      EXPECT_LT(std::abs(t.matrix(1, 1) * std::exp(period) - 1.0), 1e-8) << loop.name;
    }
  }
}

TEST(Transport, DeterminantAndRelation) {
  for (const auto& [curve, bound] : {std::pair{spread_curve(), 5L}, std::pair{squares_curve(), 1L}}) {
    const auto s = setup(curve);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto sys = NumericSystem::from(sample_system(curve, LieAlgebra::sl2(), seed, bound));
      const auto rep = monodromy(s.curve, sys, s.loops);
      EXPECT_TRUE(rep.valid) << "seed " << seed;
      EXPECT_LE(rep.relation_residual, 1e-8) << "seed " << seed;
      for (double d : rep.det_residuals) EXPECT_LE(d, 1e-10);
    }
  }
}

TEST(Transport, InverseLoopGivesInverseMatrix) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto sys = NumericSystem::from(sample_system(c, LieAlgebra::sl2(), 4, 1));
  for (const auto& loop : s.loops.loops) {
    const auto fwd = integrate_loop(s.curve, sys, loop, s.loops.base_y);
    const auto back = integrate_loop(s.curve, sys, reverse_loop(loop), s.loops.base_y);
    EXPECT_LT(operator_norm(fwd.matrix * back.matrix - Mat2::Identity()), 1e-9) << loop.name;
    EXPECT_EQ(reverse_loop(loop).name, loop.name + "^-1");
  }
}

TEST(Transport, HomotopyInvariance) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto sys = NumericSystem::from(sample_system(c, LieAlgebra::sl2(), 6, 1));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& loop : s.loops.loops) {
    const auto base = integrate_loop(s.curve, sys, loop, s.loops.base_y).matrix;
    const auto refined = integrate_loop(s.curve, sys, refine_loop(loop, s.curve, s.loops.base_y), s.loops.base_y).matrix;
    EXPECT_LE(max_entry_diff(base, refined), 1e-7) << loop.name;

    Loop moved = loop;
    const double r = s.loops.clearance / 10.0 * 0.99 / std::sqrt(2.0);
    for (std::size_t k = 1; k + 1 < moved.vertices.size(); ++k) moved.vertices[k] += Complex(r * u(rng), r * u(rng));
    annotate_sheets(moved, s.curve, s.loops.base_y);
    const auto perturbed = integrate_loop(s.curve, sys, moved, s.loops.base_y).matrix;
    EXPECT_LE(max_entry_diff(base, perturbed), 1e-7) << loop.name;
  }
}

TEST(Transport, GaugeConjugation) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto delta = sample_system(c, LieAlgebra::sl2(), 12, 1);
  ExactMatrix g(2, 2);
  g(0, 0) = 2;
  g(0, 1) = 1;
  g(1, 0) = 1;
  g(1, 1) = 1;
  const auto rep = monodromy(s.curve, NumericSystem::from(delta), s.loops);
  const auto conj = monodromy(s.curve, NumericSystem::from(delta.conjugated(g)), s.loops);
  ASSERT_TRUE(rep.valid && conj.valid);
  Mat2 sm;
  sm << 2, 1, 1, 1;
  for (std::size_t k = 0; k < rep.matrices.size(); ++k) {
    const Mat2 expect = sm * rep.matrices[k] * sm.inverse();
    EXPECT_LT(max_entry_diff(expect, conj.matrices[k]), 1e-8 * std::max(1.0, operator_norm(expect)));
  }
  const auto a = trace_vector(rep), b = trace_vector(conj);
  for (std::size_t k = 0; k < a.values.size(); ++k)
    EXPECT_LT(std::abs(a.values[k] - b.values[k]), 1e-8) << a.words[k].label;
}

TEST(Transport, StepBudgetExhaustion) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto sys = NumericSystem::from(sample_system(c, LieAlgebra::sl2(), 1, 1));
  OdeOptions tight;
  tight.max_steps = 5;
  EXPECT_THROW(integrate_loop(s.curve, sys, s.loops.loops[0], s.loops.base_y, tight), ConvergenceError);
  OdeOptions tiny;
  tiny.min_step = 0.5;
  EXPECT_THROW(integrate_loop(s.curve, sys, s.loops.loops[0], s.loops.base_y, tiny), NumericalError);
}

TEST(Transport, MeshReplayReproducesAdaptiveRun) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto sys = NumericSystem::from(sample_system(c, LieAlgebra::sl2(), 2, 1));
  for (const auto& loop : s.loops.loops) {
    const auto t = integrate_loop(s.curve, sys, loop, s.loops.base_y);
    const auto r = integrate_loop_on_mesh(s.curve, sys, loop, s.loops.base_y, t.mesh);
    EXPECT_LT(max_entry_diff(t.matrix, r.matrix), 1e-12 * std::max(1.0, operator_norm(t.matrix)));
    const Mat2Ext e = integrate_loop_on_mesh_extended(s.curve, sys, loop, s.loops.base_y, t.mesh);
    EXPECT_LT(max_entry_diff(t.matrix, e.cast<Complex>()), 1e-12 * std::max(1.0, operator_norm(t.matrix)));
  }
}

TEST(Monodromy, SerialMatchesParallel) {
  const auto c = squares_curve();
  const auto s = setup(c);
  const auto sys = NumericSystem::from(sample_system(c, LieAlgebra::sl2(), 3, 1));
  MonodromyOptions serial, parallel;
  serial.execution = Execution::serial;
  parallel.execution = Execution::parallel;
  const auto a = monodromy(s.curve, sys, s.loops, serial);
  const auto b = monodromy(s.curve, sys, s.loops, parallel);
  for (std::size_t k = 0; k < a.matrices.size(); ++k) EXPECT_EQ(a.matrices[k], b.matrices[k]);
  EXPECT_EQ(a.relation_residual, b.relation_residual);
}

TEST(Monodromy, GenusMismatchRejected) {
  const auto s = setup(HyperellipticCurve::consecutive(3));
  const auto c2 = squares_curve();
  EXPECT_THROW(monodromy(s.curve, NumericSystem::from(sample_system(c2, LieAlgebra::sl2(), 1, 1)), s.loops),
               ValidationError);
}

TEST(Words, StandardListShape) {
  for (int g = 2; g <= 5; ++g) {
    const auto words = standard_word_list(g);
    EXPECT_GE(words.size(), static_cast<std::size_t>(6 * g - 3));
    for (int k = 0; k < 2 * g; ++k) {
      ASSERT_EQ(words[static_cast<std::size_t>(k)].letters.size(), 1u);
      EXPECT_EQ(words[static_cast<std::size_t>(k)].letters[0], (std::pair{k, 1}));
    }
    std::set<std::string> labels;
    for (const auto& w : words) labels.insert(w.label);
    EXPECT_EQ(labels.size(), words.size());
  }
  EXPECT_EQ(standard_word_list(2).size(), 13u);
  EXPECT_EQ(standard_word_list(2)[6].label, "a1b1a2");
  EXPECT_THROW(standard_word_list(1), ValidationError);
}

TEST(Traces, Examples) {
  const auto id = synthetic(std::vector<Mat2>(4, Mat2::Identity()));
  for (const auto& v : trace_vector(id).values) EXPECT_EQ(v, Complex(2.0, 0.0));

  const Complex lam(1.5, 0.25);
  auto diag = std::vector<Mat2>(4, Mat2::Identity());
  diag[0] = mat(lam, 0.0, 0.0, 1.0 / lam);
  const auto t = trace_vector(synthetic(diag));
  EXPECT_LT(std::abs(t.values[0] - (lam + 1.0 / lam)), 1e-15);

  auto bad = synthetic(diag);
  bad.valid = false;
  EXPECT_THROW(trace_vector(bad), ValidationError);
}

TEST(Traces, InvariantUnderConjugation) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  auto random_sl2 = [&] {
    Mat2 m;
    m << Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng));
    return Mat2(m / std::sqrt(m.determinant()));
  };
  std::vector<Mat2> gens;
  for (int k = 0; k < 4; ++k) gens.push_back(random_sl2());
  const Mat2 s = random_sl2();
  std::vector<Mat2> conj;
  for (const auto& m : gens) conj.push_back(s * m * s.inverse());
  const auto words = standard_word_list(2);
  for (const auto& w : words) {
    const Complex a = evaluate_word(w, gens).trace(), b = evaluate_word(w, conj).trace();
    EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(a))) << w.label;
  }
}

TEST(Irreducibility, Examples) {
  const std::vector<Mat2> upper{mat(2.0, 1.0, 0.0, 0.5), mat(Complex(0, 1), 3.0, 0.0, Complex(0, -1)),
                                mat(1.0, -2.0, 0.0, 1.0), mat(-1.0, 0.5, 0.0, -1.0)};
  const auto v = irreducibility_probe(upper);
  EXPECT_TRUE(v.common_eigenvector_found);
  EXPECT_LT(std::abs(v.witness(0) - 1.0) + std::abs(v.witness(1)), 1e-12);

  EXPECT_TRUE(irreducibility_probe(std::vector<Mat2>(4, Mat2::Identity())).common_eigenvector_found);

  const auto c = squares_curve();
  const auto s = setup(c);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto delta = sample_system(c, LieAlgebra::sl2(), seed, 1);
    // A vanishing E or F row makes every coefficient triangular.
    bool triangular = false;
    for (std::size_t row : {1u, 2u}) {
      bool zero = true;
      for (std::size_t i = 0; i < 2; ++i) zero = zero && delta.coefficients()(row, i).is_zero();
      triangular = triangular || zero;
    }
    const auto rep = monodromy(s.curve, NumericSystem::from(delta), s.loops);
    const auto v = irreducibility_probe(rep);
    EXPECT_EQ(v.common_eigenvector_found, triangular) << "seed " << seed;
    if (triangular) {
      for (const auto& m : rep.matrices) {
        const Eigen::Vector2cd image = m * v.witness;
        EXPECT_LT(std::abs(image(0) * v.witness(1) - image(1) * v.witness(0)), 1e-8 * operator_norm(m));
      }
    }
  }
}

TEST(Irreducibility, DyadSystemIsReducible) {
  const auto c = squares_curve();
  const auto s = setup(c);
  ExactMatrix m(3, 2);
  // B = H + E (upper triangular), omega = omega_1 - omega_2 / 3.
  m(0, 0) = 1;
  m(0, 1) = ExactScalar::from_parts(-1, 3, 0, 1);
  m(1, 0) = 1;
  m(1, 1) = ExactScalar::from_parts(-1, 3, 0, 1);
  const auto rep = monodromy(s.curve, NumericSystem::from(DifferentialSystem(c, LieAlgebra::sl2(), m)), s.loops);
  ASSERT_TRUE(rep.valid);
  const auto v = irreducibility_probe(rep);
  EXPECT_TRUE(v.common_eigenvector_found);
  // Both eigenlines of B, spanned by (1, 0) and (1, -2), are fixed.
  const double to_first = std::abs(v.witness(1));
  const double to_second = std::abs(2.0 * v.witness(0) + v.witness(1));
  EXPECT_LT(std::min(to_first, to_second), 1e-9);
}
