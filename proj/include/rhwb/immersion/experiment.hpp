#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "rhwb/monodromy/representation.hpp"
#include "rhwb/multiplication/theta.hpp"
#include "rhwb/systems/system.hpp"

namespace rhwb {

/// Local coordinates on the space of (curve, system) pairs near an exact
/// center: the branch points other than 0 and 1 move freely (infinity is
/// the third fixed point of the odd model), and the sl2 coefficients are
/// cut by a gauge slice that freezes the E entry of B1, the F entry of B1
/// and the H entry of B2.
struct SystCoordinates {
  NumericCurve curve;
  NumericSystem system;
  /// Indices into curve.branch_points that move.
  std::vector<std::size_t> moving_branch_points;
  /// (algebra row, differential column) of each free coefficient entry.
  std::vector<std::pair<std::size_t, std::size_t>> free_entries;
  std::vector<std::string> labels;

  std::size_t parameter_count() const { return moving_branch_points.size() + free_entries.size(); }
  std::vector<Complex> parameters() const;
  /// Copy with the free parameters replaced.
  SystCoordinates at(const std::vector<Complex>& p) const;
};

/// Frozen (row, column) entries of the gauge slice.
std::vector<std::pair<std::size_t, std::size_t>> gauge_slice_entries();

/// Whether the slice is transverse to the gauge orbit at `system`: the map
/// X -> ([X,B1]_E, [X,B1]_F, [X,B2]_H) on sl2 is invertible. Returns |det|.
double slice_regularity(const NumericSystem& system);

/// With free_gauge, no entry is frozen (used to check that the rank never
/// exceeds the character-variety dimension).
SystCoordinates make_coordinates(const DifferentialSystem& center, bool free_gauge = false);

/// Seeded sl2 system on `curve` whose gauge slice is regular, redrawing
/// with derived seeds as needed.
DifferentialSystem sample_center(const Curve& curve, std::uint64_t seed, long bound);

struct ImmersionOptions {
  double fd_step = 1e-6;
  double clearance = 0.25;
  OdeOptions ode;
  double relation_tolerance = 1e-8;
  double det_tolerance = 1e-10;
  /// Singular values below this fraction of the largest are not rank candidates.
  double rank_floor = 1e-6;
  bool free_gauge = false;
  Execution execution = Execution::parallel;
  /// Empty means standard_word_list(genus).
  std::vector<Word> words;
};

enum class Hypothesis { in_hypothesis, out_of_hypothesis, exploratory };
std::string to_string(Hypothesis h);

struct GapAnalysis {
  std::size_t rank = 0;
  double gap_ratio = 0.0;
  /// True when the gap at full column rank was measured against the noise floor.
  bool against_noise_floor = false;
};

/// r maximizing sigma_r / sigma_{r+1} among sigma_r / sigma_1 > floor; at
/// full column rank the next value is `noise_floor`.
GapAnalysis gap_analysis(const std::vector<double>& singular_values, std::size_t columns,
                         double noise_floor, double floor = 1e-6);

struct ImmersionReport {
  int genus = 0;
  std::vector<std::string> parameter_labels;
  std::vector<std::string> word_labels;
  long dim_character_variety = 0;
  long dim_syst = 0;
  /// Real Jacobian: rows re/im of each trace, columns re/im of each parameter.
  Eigen::MatrixXd jacobian;
  std::vector<double> singular_values;
  std::size_t estimated_real_rank = 0;
  std::size_t estimated_rank = 0;
  bool real_rank_even = false;
  double gap_ratio = 0.0;
  bool gap_against_noise_floor = false;
  double noise_floor = 0.0;
  std::vector<double> fd_steps_used;
  double branch_block_norm = 0.0;
  double system_block_norm = 0.0;
  CriterionVerdict criterion_verdict;
  IrreducibilityVerdict irreducibility;
  double center_relation_residual = 0.0;
  Hypothesis hypothesis = Hypothesis::exploratory;
  LoopSystem loops;
  std::vector<Complex> center_traces;
};

/// Real Jacobian of the trace vector in the free parameters by central
/// differences with step h, replaying the center's step meshes. Columns
/// are independent monodromy computations.
Eigen::MatrixXd trace_jacobian(const SystCoordinates& center, const LoopSystem& loops,
                               const std::vector<StepMesh>& meshes, const std::vector<Word>& words,
                               double h, Execution execution);

ImmersionReport immersion_experiment(const DifferentialSystem& center,
                                     const ImmersionOptions& options = {});

struct LadderReport {
  std::vector<double> steps;
  std::vector<std::size_t> ranks;
  std::vector<ImmersionReport> reports;
  bool rank_stable = false;
  /// Largest relative change of the leading singular values between any two steps.
  double max_singular_value_deviation = 0.0;
};

/// Needs at least 3 steps spanning at least two orders of magnitude.
LadderReport fd_step_ladder(const DifferentialSystem& center, const std::vector<double>& steps,
                            const ImmersionOptions& options = {});

}  // namespace rhwb
