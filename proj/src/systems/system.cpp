#include "rhwb/systems/system.hpp"

#include <random>
#include <utility>

#include "rhwb/errors.hpp"
#include "rhwb/rng.hpp"

namespace rhwb {

DifferentialSystem::DifferentialSystem(Curve curve, LieAlgebra algebra, ExactMatrix coefficients)
    : curve_(std::move(curve)), algebra_(std::move(algebra)), coefficients_(std::move(coefficients)) {
  const auto g = static_cast<std::size_t>(curve_.genus());
  if (coefficients_.rows() != algebra_.dimension() || coefficients_.cols() != g) {
    throw ValidationError("system coefficients: expected a " +
                          std::to_string(algebra_.dimension()) + "x" + std::to_string(g) +
                          " matrix, got " + std::to_string(coefficients_.rows()) + "x" +
                          std::to_string(coefficients_.cols()));
  }
}

DifferentialSystem DifferentialSystem::conjugated(const ExactMatrix& s) const {
  if (algebra_.name() != "sl2") throw ValidationError("conjugated: only sl2 systems are supported");
  if (s.rows() != 2 || s.cols() != 2) throw ValidationError("conjugated: S must be 2x2");
  const ExactScalar det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  if (det.is_zero()) throw ValidationError("conjugated: S is singular");
  const ExactMatrix s_inv = ExactMatrix::from_rows(
      {{s(1, 1) / det, -s(0, 1) / det}, {-s(1, 0) / det, s(0, 0) / det}});

  const auto& e = sl2_matrices();
  ExactMatrix out(3, coefficients_.cols());
  for (std::size_t i = 0; i < coefficients_.cols(); ++i) {
    ExactMatrix b(2, 2);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) b(r, c) += coefficients_(j, i) * e[j](r, c);
    const ExactMatrix conj = s * b * s_inv;
    // [[a, b], [c, -a]] = a H + b E + c F
    out(0, i) = conj(0, 0);
    out(1, i) = conj(0, 1);
    out(2, i) = conj(1, 0);
  }
  return {curve_, algebra_, std::move(out)};
}

std::vector<ExactScalar> contract(const DifferentialSystem& system,
                                  const std::vector<ExactScalar>& functional) {
  const auto& m = system.coefficients();
  if (functional.size() != m.rows()) {
    throw ValidationError("contract: functional has length " + std::to_string(functional.size()) +
                          ", Lie algebra has dimension " + std::to_string(m.rows()));
  }
  std::vector<ExactScalar> out(m.cols());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    if (functional[j].is_zero()) continue;
    for (std::size_t i = 0; i < m.cols(); ++i) out[i] += functional[j] * m(j, i);
  }
  return out;
}

DyadVerdict dyad_detect(const DifferentialSystem& system) {
  const std::size_t rank = exact_rank(system.coefficients());
  return {rank <= 1, rank};
}

DifferentialSystem sample_system(const Curve& curve, const LieAlgebra& algebra,
                                 std::uint64_t seed, long bound) {
  if (bound < 0) throw ValidationError("sample_system: bound must be nonnegative");
  std::mt19937_64 engine(seed);
  ExactMatrix m(algebra.dimension(), static_cast<std::size_t>(curve.genus()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = uniform_int(engine, -bound, bound);
  return {curve, algebra, std::move(m)};
}

DimensionReport dimension_report(int genus, const LieAlgebra& algebra) {
  if (genus < 2) {
    throw ValidationError("dimension_report: genus must be >= 2, got " + std::to_string(genus));
  }
  DimensionReport r;
  r.genus = genus;
  r.d = static_cast<long>(algebra.commutator_dimension());
  r.c = static_cast<long>(algebra.center_dimension());
  const long g = genus;
  r.dim_character_variety = 2 * (g - 1) * r.d + 2 * g * r.c;
  r.dim_syst = (g - 1) * (r.d + 3) + g * r.c;
  r.dim_teichmuller = 3 * g - 3;
  r.gauge_dimension = r.d;
  if (r.dim_syst != r.dim_teichmuller + g * (r.d + r.c) - r.gauge_dimension) {
    throw std::logic_error("dimension_report: Syst dimension identity violated");
  }
  return r;
}

}  // namespace rhwb
