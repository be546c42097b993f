#include "rhwb/multiplication/theta.hpp"

#include <random>

#include "rhwb/errors.hpp"
#include "rhwb/rng.hpp"

namespace rhwb {

SubspaceSelection::SubspaceSelection(DifferentialBasis ambient,
                                     std::vector<std::vector<ExactScalar>> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  if (ambient_.weight() != 1) throw ValidationError("subspace: ambient basis must have weight 1");
  if (generators_.size() > ambient_.size()) {
    throw ValidationError("subspace: dimension " + std::to_string(generators_.size()) +
                          " exceeds genus " + std::to_string(ambient_.size()));
  }
  for (const auto& g : generators_)
    if (g.size() != ambient_.size()) throw ValidationError("subspace: generator length mismatch");
  if (!generators_.empty() && exact_rank(ExactMatrix::from_rows(generators_)) != generators_.size()) {
    throw ValidationError("subspace: generators are linearly dependent");
  }
}

SubspaceSelection SubspaceSelection::full(const DifferentialBasis& ambient) {
  std::vector<std::vector<ExactScalar>> gens(ambient.size(),
                                             std::vector<ExactScalar>(ambient.size()));
  for (std::size_t i = 0; i < ambient.size(); ++i) gens[i][i] = 1;
  return {ambient, std::move(gens)};
}

MultiplicationMatrix theta_matrix(const Curve& curve, const SubspaceSelection& w) {
  if (!(w.ambient().curve() == curve)) {
    throw ValidationError("theta_matrix: subspace belongs to a different curve");
  }
  const DifferentialBasis omega = canonical_basis(curve);
  const DifferentialBasis quadratic = quadratic_basis(curve);
  const std::size_t dim_w = w.dimension();

  MultiplicationMatrix out;
  out.genus = curve.genus();
  out.domain_description = dim_w == omega.size() ? "H0(K) x H0(K)"
                                                 : "H0(K) x W, dim W = " + std::to_string(dim_w);
  out.matrix = ExactMatrix(quadratic.size(), omega.size() * dim_w);
  std::vector<Differential> w_elements;
  for (std::size_t k = 0; k < dim_w; ++k) w_elements.push_back(w.element(k));

  for (std::size_t i = 0; i < omega.size(); ++i)
    for (std::size_t k = 0; k < dim_w; ++k) {
      const auto coords = express_in_basis(omega[i] * w_elements[k], quadratic);
      for (std::size_t r = 0; r < coords.size(); ++r) out.matrix(r, i * dim_w + k) = coords[r];
    }
  out.rank = exact_rank(out.matrix);
  return out;
}

NoetherVerdict noether_check(const Curve& curve) {
  const auto theta = theta_matrix(curve, SubspaceSelection::full(canonical_basis(curve)));
  const std::size_t target = theta.matrix.rows();
  return {theta.rank == target, theta.rank, target - theta.rank};
}

std::vector<std::vector<ExactScalar>> scan_subspace(std::size_t genus, std::size_t w_dim,
                                                    std::uint64_t trial_seed) {
  std::mt19937_64 engine(trial_seed);
  for (;;) {
    std::vector<std::vector<ExactScalar>> gens(w_dim, std::vector<ExactScalar>(genus));
    for (auto& g : gens)
      for (auto& c : g) c = uniform_int(engine, -kScanCoordinateBound, kScanCoordinateBound);
    if (w_dim == 0 || exact_rank(ExactMatrix::from_rows(gens)) == w_dim) return gens;
  }
}

namespace {

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::vector<std::vector<ExactScalar>> generators;
  std::size_t rank = 0;
  bool surjective = false;
};

TrialOutcome run_trial(const Curve& curve, const DifferentialBasis& omega, std::size_t w_dim,
                       std::uint64_t master, std::size_t trial) {
  TrialOutcome out;
  out.seed = derive_seed(master, trial);
  out.generators = scan_subspace(omega.size(), w_dim, out.seed);
  const auto theta = theta_matrix(curve, SubspaceSelection(omega, out.generators));
  out.rank = theta.rank;
  out.surjective = theta.surjective();
  return out;
}

}  // namespace

ScanReport lazarsfeld_scan(const Curve& curve, std::size_t trials, std::size_t w_dim,
                           std::uint64_t seed, Execution execution) {
  const auto genus = static_cast<std::size_t>(curve.genus());
  if (w_dim > genus) {
    throw ValidationError("lazarsfeld_scan: w_dim " + std::to_string(w_dim) + " exceeds genus " +
                          std::to_string(genus));
  }
  if (trials == 0) throw ValidationError("lazarsfeld_scan: trials must be >= 1");

  const DifferentialBasis omega = canonical_basis(curve);
  std::vector<TrialOutcome> outcomes(trials);
  if (execution == Execution::serial) {
    for (std::size_t t = 0; t < trials; ++t) outcomes[t] = run_trial(curve, omega, w_dim, seed, t);
  } else {
    const auto n = static_cast<long>(trials);
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < n; ++t) {
      const auto idx = static_cast<std::size_t>(t);
      outcomes[idx] = run_trial(curve, omega, w_dim, seed, idx);
    }
  }

  ScanReport report;
  report.trials = trials;
  report.w_dim = w_dim;
  report.seed = seed;
  report.target_rank = static_cast<std::size_t>(3 * curve.genus() - 3);
  for (std::size_t t = 0; t < trials; ++t) {
    if (outcomes[t].surjective) {
      ++report.successes;
    } else {
      report.failures.push_back(
          {t, outcomes[t].seed, std::move(outcomes[t].generators), outcomes[t].rank});
    }
  }
  return report;
}

CriterionVerdict criterion_injective(const Curve& curve, const DifferentialSystem& system) {
  if (!(system.curve() == curve)) {
    throw ValidationError("criterion_injective: system lives on a different curve");
  }
  CriterionVerdict verdict;
  verdict.target_dimension = static_cast<std::size_t>(3 * curve.genus() - 3);
  const ExactMatrix v = row_space_basis(system.coefficients());
  verdict.v_dimension = v.rows();
  if (v.rows() == 0) return verdict;

  std::vector<std::vector<ExactScalar>> gens;
  for (std::size_t r = 0; r < v.rows(); ++r) gens.emplace_back(v.row(r).begin(), v.row(r).end());
  const auto theta = theta_matrix(curve, SubspaceSelection(canonical_basis(curve), std::move(gens)));
  verdict.theta_v_rank = theta.rank;
  verdict.holds = theta.surjective();
  return verdict;
}

}  // namespace rhwb
