#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rhwb/monodromy/transport.hpp"
#include "rhwb/parallel.hpp"

namespace rhwb {

struct MonodromyOptions {
  OdeOptions ode;
  double relation_tolerance = 1e-8;
  double det_tolerance = 1e-10;
  Execution execution = Execution::parallel;
};

/// Monodromy matrices A1, B1, ..., Ag, Bg with their residuals.
struct MonodromyRepresentation {
  std::vector<Mat2> matrices;
  /// ||A1 B1 A1^-1 B1^-1 ... - I|| in the operator 2-norm.
  double relation_residual = 0.0;
  std::vector<double> det_residuals;
  bool valid = false;
  double relation_tolerance = 0.0;
  double det_tolerance = 0.0;
  std::vector<StepMesh> meshes;
};

double operator_norm(const Mat2& m);

/// Residual of the surface-group relation for generator matrices in the
/// order A1, B1, ..., Ag, Bg.
double relation_residual(const std::vector<Mat2>& generators);

MonodromyRepresentation monodromy(const NumericCurve& curve, const NumericSystem& system,
                                  const LoopSystem& loops, const MonodromyOptions& options = {});

/// Replays previously recorded step meshes (one per loop).
MonodromyRepresentation monodromy_on_meshes(const NumericCurve& curve, const NumericSystem& system,
                                            const LoopSystem& loops,
                                            const std::vector<StepMesh>& meshes,
                                            const MonodromyOptions& options = {});

/// A word in the generators. Letter (k, e): generator k (0-based over
/// a1, b1, a2, b2, ...) raised to e = +1 or -1.
struct Word {
  std::string label;
  std::vector<std::pair<int, int>> letters;
};

/// Fixed list: the 2g generators, the g products a_i b_i, a1 b1 a2, every
/// other ordered pair of distinct generators, then a_i b_i^-1. Always at
/// least dim Xi + 3 = 6g - 3 words.
std::vector<Word> standard_word_list(int genus);

Mat2 evaluate_word(const Word& word, const std::vector<Mat2>& generators);

struct TraceVector {
  std::vector<Word> words;
  std::vector<Complex> values;
};

/// Traces of `words`; throws ValidationError for an invalid representation.
TraceVector trace_vector(const MonodromyRepresentation& rep, const std::vector<Word>& words);
TraceVector trace_vector(const MonodromyRepresentation& rep);

struct IrreducibilityVerdict {
  bool common_eigenvector_found = false;
  Eigen::Vector2cd witness = Eigen::Vector2cd::Zero();
};

/// Looks for a line fixed by every generator: takes the eigenvectors of the
/// first non-scalar generator and tests each against all others.
IrreducibilityVerdict irreducibility_probe(const std::vector<Mat2>& generators,
                                           double tolerance = 1e-6);
IrreducibilityVerdict irreducibility_probe(const MonodromyRepresentation& rep,
                                           double tolerance = 1e-6);

}  // namespace rhwb
