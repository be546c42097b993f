#include <gtest/gtest.h>

#include "rhwb/errors.hpp"
#include "rhwb/immersion/experiment.hpp"

using namespace rhwb;

namespace {

HyperellipticCurve squares_curve() { return HyperellipticCurve({0, 1, 4, 9, 16}); }

// Seed 1 passes the criterion and irreducibility gate (checked in GenusTwoCenterHasFullRank).
DifferentialSystem in_hypothesis_center() { return sample_center(squares_curve(), 1, 1); }

Mat2 sl2(std::size_t row) {
  Mat2 m = Mat2::Zero();
  if (row == 0) {
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
  } else if (row == 1) {
    m(0, 1) = 1.0;
  } else {
    m(1, 0) = 1.0;
  }
  return m;
}

}  // namespace

TEST(GapAnalysis, PicksTheLargestGap) {
  const auto a = gap_analysis({10.0, 1.0, 1e-4, 1e-5}, 4, 1e-6);
  EXPECT_EQ(a.rank, 2u);
  EXPECT_DOUBLE_EQ(a.gap_ratio, 1e4);
  EXPECT_FALSE(a.against_noise_floor);
}

TEST(GapAnalysis, FullRankUsesNoiseFloor) {
  const auto a = gap_analysis({1.0, 0.5}, 2, 1e-9);
  EXPECT_EQ(a.rank, 2u);
  EXPECT_DOUBLE_EQ(a.gap_ratio, 0.5e9);
  EXPECT_TRUE(a.against_noise_floor);
}

TEST(GapAnalysis, RespectsTheFloor) {
  const auto a = gap_analysis({1.0, 1e-7, 1e-20}, 3, 1e-30);
  EXPECT_EQ(a.rank, 1u);
  EXPECT_DOUBLE_EQ(a.gap_ratio, 1e7);
  const auto b = gap_analysis({1.0, 1e-7, 1e-20}, 3, 1e-30, 1e-8);
  EXPECT_EQ(b.rank, 2u);
  EXPECT_EQ(gap_analysis({}, 0, 1.0).rank, 0u);
  EXPECT_EQ(gap_analysis({0.0, 0.0}, 2, 1.0).rank, 0u);
}

TEST(Coordinates, ParameterCounts) {
  const auto c2 = make_coordinates(in_hypothesis_center());
  EXPECT_EQ(c2.parameter_count(), 6u);
  EXPECT_EQ(c2.labels.size(), 6u);
  EXPECT_EQ(c2.labels.front(), "branch_point[2]");

  const HyperellipticCurve g3({0, 1, 4, 9, 16, 25, 36});
  const auto c3 = make_coordinates(sample_center(g3, 1, 1));
  EXPECT_EQ(c3.moving_branch_points.size(), 5u);
  EXPECT_EQ(c3.parameter_count(), 11u);

  const auto free = make_coordinates(in_hypothesis_center(), true);
  EXPECT_EQ(free.parameter_count(), 9u);
}

TEST(Coordinates, RoundTrip) {
  const auto c = make_coordinates(in_hypothesis_center());
  auto p = c.parameters();
  EXPECT_EQ(c.at(p).parameters(), p);
  for (auto& x : p) x += Complex(0.01, -0.02);
  const auto moved = c.at(p);
  EXPECT_EQ(moved.parameters(), p);
  // Frozen entries and traces stay put.
  for (const auto& [row, col] : gauge_slice_entries()) {
    const Mat2 diff = moved.system.coefficients[col] - c.system.coefficients[col];
    const Complex e = row == 0 ? diff(0, 0) : row == 1 ? diff(0, 1) : diff(1, 0);
    EXPECT_EQ(e, Complex(0.0, 0.0));
  }
  for (const auto& b : moved.system.coefficients) EXPECT_LT(std::abs(b.trace()), 1e-15);
  EXPECT_THROW(c.at({Complex(1.0)}), ValidationError);
}

TEST(Coordinates, SliceRegularityMatchesCommutatorDeterminant) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sys = NumericSystem::from(sample_system(squares_curve(), LieAlgebra::sl2(), seed, 3));
    Eigen::Matrix3cd m;
    const auto slice = gauge_slice_entries();
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t r = 0; r < 3; ++r) {
        const Mat2& b = sys.coefficients[slice[r].second];
        const Mat2 bracket = sl2(x) * b - b * sl2(x);
        // Coordinate of `bracket` along slice[r].first in the (H, E, F) basis.
        const Complex c = slice[r].first == 0 ? bracket(0, 0) : slice[r].first == 1 ? bracket(0, 1) : bracket(1, 0);
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)) = c;
      }
    EXPECT_NEAR(slice_regularity(sys), std::abs(m.determinant()), 1e-9 * (1.0 + std::abs(m.determinant())));
    // Closed form 4 h1 (f1 e2 - e1 f2) with B1 = (h1, e1, f1), B2 = (h2, e2, f2).
    const Mat2& b1 = sys.coefficients[0];
    const Mat2& b2 = sys.coefficients[1];
    const Complex closed = 4.0 * b1(0, 0) * (b1(1, 0) * b2(0, 1) - b1(0, 1) * b2(1, 0));
    EXPECT_NEAR(slice_regularity(sys), std::abs(closed), 1e-9 * (1.0 + std::abs(closed)));
  }
}

TEST(Coordinates, Validates) {
  EXPECT_THROW(make_coordinates(DifferentialSystem(squares_curve(), LieAlgebra::sl2(), ExactMatrix(3, 2))),
               ValidationError);
  EXPECT_NO_THROW(make_coordinates(DifferentialSystem(squares_curve(), LieAlgebra::sl2(), ExactMatrix(3, 2)), true));
  EXPECT_THROW(make_coordinates(sample_center(HyperellipticCurve({0, 2, 4, 9, 16}), 1, 1)), ValidationError);
  EXPECT_THROW(make_coordinates(sample_system(squares_curve(), LieAlgebra::gl2(), 1, 1)), ValidationError);
  EXPECT_THROW(make_coordinates(sample_system(PlaneQuartic::fermat(), LieAlgebra::sl2(), 1, 1)), ValidationError);
}

TEST(Coordinates, SampleCenterIsDeterministicAndRegular) {
  const auto a = sample_center(squares_curve(), 5, 1);
  EXPECT_EQ(a.coefficients(), sample_center(squares_curve(), 5, 1).coefficients());
  EXPECT_GT(slice_regularity(NumericSystem::from(a)), 0.5);
  EXPECT_THROW(sample_center(squares_curve(), 5, 0), ValidationError);
}

TEST(Immersion, GenusTwoCenterHasFullRank) {
  const auto center = in_hypothesis_center();
  const auto r = immersion_experiment(center);
  ASSERT_EQ(r.hypothesis, Hypothesis::in_hypothesis);
  EXPECT_TRUE(r.criterion_verdict.holds);
  EXPECT_EQ(r.jacobian.rows(), 26);
  EXPECT_EQ(r.jacobian.cols(), 12);
  EXPECT_EQ(r.estimated_rank, 6u);
  EXPECT_TRUE(r.real_rank_even);
  EXPECT_GE(r.gap_ratio, 1e3);
  EXPECT_LE(r.center_relation_residual, 1e-8);
  EXPECT_EQ(r.fd_steps_used, (std::vector<double>{1e-6, 5e-7}));
  EXPECT_EQ(r.dim_character_variety, 6);
  EXPECT_LE(r.estimated_rank, static_cast<std::size_t>(r.dim_character_variety));
}

TEST(Immersion, FreeGaugeRankStaysAtCharacterVarietyDimension) {
  ImmersionOptions o;
  o.free_gauge = true;
  const auto r = immersion_experiment(in_hypothesis_center(), o);
  ASSERT_EQ(r.singular_values.size(), 18u);
  EXPECT_EQ(r.estimated_rank, 6u);
  EXPECT_LE(r.singular_values[12] / r.singular_values[0], 1e-6);
}

TEST(Immersion, SerialJacobianMatchesParallel) {
  const auto center = in_hypothesis_center();
  const auto coords = make_coordinates(center);
  const auto loops = build_loops(coords.curve, 0.25);
  const auto rep = monodromy(coords.curve, coords.system, loops);
  const auto words = standard_word_list(2);
  const auto a = trace_jacobian(coords, loops, rep.meshes, words, 1e-6, Execution::serial);
  const auto b = trace_jacobian(coords, loops, rep.meshes, words, 1e-6, Execution::parallel);
  EXPECT_EQ(a, b);
}

TEST(Immersion, FiniteDifferencesAreConsistent) {
  const auto center = in_hypothesis_center();
  const auto coords = make_coordinates(center);
  const auto loops = build_loops(coords.curve, 0.25);
  const auto rep = monodromy(coords.curve, coords.system, loops);
  const auto words = standard_word_list(2);
  const auto a = trace_jacobian(coords, loops, rep.meshes, words, 1e-5, Execution::parallel);
  const auto b = trace_jacobian(coords, loops, rep.meshes, words, 5e-6, Execution::parallel);
  int checked = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) <= 1e-6) continue;
      ++checked;
      EXPECT_LE(std::abs(a(i, j) - b(i, j)), 0.01 * std::abs(a(i, j))) << i << "," << j;
    }
  EXPECT_GT(checked, 0);
}

TEST(Immersion, DyadCenterIsOutOfHypothesis) {
  ExactMatrix m(3, 2);
  m(0, 0) = 1;
  m(0, 1) = -1;
  m(1, 0) = 2;
  m(1, 1) = -2;
  const DifferentialSystem dyad(squares_curve(), LieAlgebra::sl2(), m);
  EXPECT_THROW(immersion_experiment(dyad), ValidationError);
  ImmersionOptions o;
  o.free_gauge = true;
  const auto r = immersion_experiment(dyad, o);
  EXPECT_TRUE(r.irreducibility.common_eigenvector_found);
  EXPECT_FALSE(r.criterion_verdict.holds);
  EXPECT_EQ(r.hypothesis, Hypothesis::out_of_hypothesis);
}

TEST(Immersion, GenusThreeIsExploratory) {
  const HyperellipticCurve g3({0, 1, 4, 9, 16, 25, 36});
  const auto r = immersion_experiment(sample_center(g3, 1, 1));
  EXPECT_EQ(r.hypothesis, Hypothesis::exploratory);
  EXPECT_FALSE(r.criterion_verdict.holds);
  EXPECT_EQ(r.jacobian.cols(), 22);
  EXPECT_LE(r.estimated_rank, 11u);
}

TEST(Immersion, ZeroCenterRecordsBlockNorms) {
  ImmersionOptions o;
  o.free_gauge = true;
  const auto r = immersion_experiment(DifferentialSystem(squares_curve(), LieAlgebra::sl2(), ExactMatrix(3, 2)), o);
  EXPECT_TRUE(std::isfinite(r.branch_block_norm));
  EXPECT_TRUE(std::isfinite(r.system_block_norm));
  // Traces are even in the coefficients at the trivial connection.
  EXPECT_LE(r.system_block_norm, 1e-6);
  EXPECT_LE(r.branch_block_norm, 1e-6);
  EXPECT_EQ(r.hypothesis, Hypothesis::out_of_hypothesis);
}

TEST(Immersion, RankInvariantUnderConjugation) {
  const auto center = in_hypothesis_center();
  ExactMatrix s(2, 2);
  s(0, 0) = 2;
  s(0, 1) = 1;
  s(1, 0) = 1;
  s(1, 1) = 1;
  const auto conj = center.conjugated(s);
  ASSERT_GT(slice_regularity(NumericSystem::from(conj)), 1e-6);
  const auto a = immersion_experiment(center);
  const auto b = immersion_experiment(conj);
  EXPECT_EQ(a.estimated_rank, b.estimated_rank);
  for (std::size_t k = 0; k < a.center_traces.size(); ++k)
    EXPECT_LT(std::abs(a.center_traces[k] - b.center_traces[k]), 1e-8);
}

TEST(Immersion, ValidatesOptions) {
  const auto center = in_hypothesis_center();
  ImmersionOptions o;
  o.fd_step = 0.1;
  EXPECT_THROW(immersion_experiment(center, o), ValidationError);
  o.fd_step = 0.0;
  EXPECT_THROW(immersion_experiment(center, o), ValidationError);
  o = {};
  o.rank_floor = 1.5;
  EXPECT_THROW(immersion_experiment(center, o), ValidationError);
}

TEST(Ladder, Validates) {
  const auto center = in_hypothesis_center();
  EXPECT_THROW(fd_step_ladder(center, {1e-2}), ValidationError);
  EXPECT_THROW(fd_step_ladder(center, {1e-4, 5e-5, 2e-5}), ValidationError);
  EXPECT_THROW(fd_step_ladder(center, {1e-4, -1e-5, 1e-6}), ValidationError);
}

TEST(Ladder, StableAcrossSteps) {
  const auto l = fd_step_ladder(in_hypothesis_center(), {1e-4, 1e-5, 1e-6});
  EXPECT_TRUE(l.rank_stable);
  EXPECT_EQ(l.ranks, (std::vector<std::size_t>{6, 6, 6}));
  EXPECT_LT(l.max_singular_value_deviation, 1e-2);
  for (const auto& r : l.reports) EXPECT_GE(r.gap_ratio, 1e3);
}
