#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhwb/curves/differentials.hpp"
#include "rhwb/field/exact_matrix.hpp"
#include "rhwb/parallel.hpp"
#include "rhwb/systems/system.hpp"

namespace rhwb {

/// A subspace W of H^0(K) given by exactly independent coordinate vectors
/// with respect to the canonical basis.
class SubspaceSelection {
 public:
  SubspaceSelection(DifferentialBasis ambient, std::vector<std::vector<ExactScalar>> generators);

  static SubspaceSelection full(const DifferentialBasis& ambient);

  const DifferentialBasis& ambient() const { return ambient_; }
  const std::vector<std::vector<ExactScalar>>& generators() const { return generators_; }
  std::size_t dimension() const { return generators_.size(); }
  /// The k-th generator as a differential.
  Differential element(std::size_t k) const { return ambient_.combine(generators_[k]); }

 private:
  DifferentialBasis ambient_;
  std::vector<std::vector<ExactScalar>> generators_;
};

/// Matrix of H^0(K) (x) W -> H^0(K^2) in the quadratic basis. Column
/// i * dim W + k holds the coordinates of omega_i * w_k.
struct MultiplicationMatrix {
  std::string domain_description;
  int genus = 0;
  ExactMatrix matrix;
  std::size_t rank = 0;

  bool surjective() const { return rank == matrix.rows(); }
};

MultiplicationMatrix theta_matrix(const Curve& curve, const SubspaceSelection& w);

struct NoetherVerdict {
  bool surjective = false;
  std::size_t rank = 0;
  std::size_t corank = 0;
};

/// Surjectivity of H^0(K) (x) H^0(K) -> H^0(K^2).
NoetherVerdict noether_check(const Curve& curve);

struct ScanFailure {
  std::size_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::vector<std::vector<ExactScalar>> generators;
  std::size_t rank = 0;
};

struct ScanReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t w_dim = 0;
  std::uint64_t seed = 0;
  std::size_t target_rank = 0;
  std::vector<ScanFailure> failures;
};

/// Integer coordinates for random W are drawn from [-kScanCoordinateBound, kScanCoordinateBound].
inline constexpr long kScanCoordinateBound = 10;

/// The W of trial `trial`: w_dim independent generators from that trial's seed
/// (redrawing dependent sets within the same stream).
std::vector<std::vector<ExactScalar>> scan_subspace(std::size_t genus, std::size_t w_dim,
                                                    std::uint64_t trial_seed);

/// Draws `trials` random w_dim-dimensional W and counts surjective Theta_W.
/// Trial t uses derive_seed(seed, t), so parallel and serial runs agree.
ScanReport lazarsfeld_scan(const Curve& curve, std::size_t trials, std::size_t w_dim,
                           std::uint64_t seed, Execution execution = Execution::parallel);

struct CriterionVerdict {
  bool holds = false;
  std::size_t v_dimension = 0;
  std::size_t theta_v_rank = 0;
  std::size_t target_dimension = 0;
};

/// V = row span of the system's coefficient matrix inside H^0(K). The
/// criterion holds iff Theta_V : H^0(K) (x) V -> H^0(K^2) is surjective, the
/// Serre-dual form of injectivity of H^1(TX) -> H^1(O) (x) g.
CriterionVerdict criterion_injective(const Curve& curve, const DifferentialSystem& system);

}  // namespace rhwb
