#include "rhwb/systems/lie_algebra.hpp"

#include <utility>

#include "rhwb/errors.hpp"

namespace rhwb {

namespace {

ExactMatrix unit(std::size_t n, std::size_t r, std::size_t c) {
  ExactMatrix m(n, n);
  m(r, c) = 1;
  return m;
}

ExactMatrix difference(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::size_t dimension, std::vector<ExactScalar> constants)
    : name_(std::move(name)), dimension_(dimension), constants_(std::move(constants)) {
  const std::size_t n = dimension_;
  if (n == 0) throw ValidationError("lie algebra '" + name_ + "': dimension must be positive");
  if (constants_.size() != n * n * n) {
    throw ValidationError("lie algebra '" + name_ + "': structure table needs " +
                          std::to_string(n * n * n) + " entries, got " +
                          std::to_string(constants_.size()));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (constant(i, j, k) != -constant(j, i, k)) {
          throw ValidationError("lie algebra '" + name_ + "': bracket is not antisymmetric at (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
        }

  auto basis = [n](std::size_t i) {
    std::vector<ExactScalar> v(n);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto ei = basis(i), ej = basis(j), ek = basis(k);
        auto sum = bracket(ei, bracket(ej, ek));
        const auto t2 = bracket(ej, bracket(ek, ei));
        const auto t3 = bracket(ek, bracket(ei, ej));
        for (std::size_t m = 0; m < n; ++m) sum[m] += t2[m] + t3[m];
        for (const auto& s : sum)
          if (!s.is_zero()) {
            throw ValidationError("lie algebra '" + name_ + "': Jacobi identity fails on (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ", " +
                                  std::to_string(k) + ")");
          }
      }

  // [g, g] is spanned by the brackets of basis pairs; the center is the
  // kernel of X -> ([X, e_j])_j.
  ExactMatrix brackets(n * n, n);
  ExactMatrix ad(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        brackets(i * n + j, k) = constant(i, j, k);
        ad(j * n + k, i) = constant(i, j, k);
      }
  commutator_dimension_ = exact_rank(brackets);
  center_dimension_ = n - exact_rank(ad);
  if (commutator_dimension_ + center_dimension_ != n) {
    throw ValidationError("lie algebra '" + name_ + "' is not reductive: dim [g,g] = " +
                          std::to_string(commutator_dimension_) + ", dim center = " +
                          std::to_string(center_dimension_));
  }
}

std::vector<ExactScalar> LieAlgebra::bracket(const std::vector<ExactScalar>& a,
                                             const std::vector<ExactScalar>& b) const {
  const std::size_t n = dimension_;
  if (a.size() != n || b.size() != n) throw ValidationError("bracket: vector length mismatch");
  std::vector<ExactScalar> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      const ExactScalar w = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!constant(i, j, k).is_zero()) out[k] += w * constant(i, j, k);
    }
  }
  return out;
}

LieAlgebra LieAlgebra::from_matrices(std::string name, const std::vector<ExactMatrix>& basis) {
  const std::size_t n = basis.size();
  if (n == 0) throw ValidationError("lie algebra '" + name + "': empty basis");
  const std::size_t size = basis.front().rows();
  ExactMatrix flat(size * size, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t e = 0; e < size * size; ++e) flat(e, k) = basis[k].entries()[e];
  if (exact_rank(flat) != n) {
    throw ValidationError("lie algebra '" + name + "': basis matrices are dependent");
  }

  std::vector<ExactScalar> constants(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ExactMatrix commutator = difference(basis[i] * basis[j], basis[j] * basis[i]);
      const auto coords = solve_exact(flat, commutator.entries());
      if (!coords) {
        throw ValidationError("lie algebra '" + name + "': span is not closed under brackets");
      }
      for (std::size_t k = 0; k < n; ++k) constants[(i * n + j) * n + k] = (*coords)[k];
    }
  return {std::move(name), n, std::move(constants)};
}

const std::vector<ExactMatrix>& sl2_matrices() {
  static const std::vector<ExactMatrix> basis = {
      ExactMatrix::from_rows({{1, 0}, {0, -1}}),
      ExactMatrix::from_rows({{0, 1}, {0, 0}}),
      ExactMatrix::from_rows({{0, 0}, {1, 0}}),
  };
  return basis;
}

LieAlgebra LieAlgebra::sl2() { return from_matrices("sl2", sl2_matrices()); }

LieAlgebra LieAlgebra::gl2() {
  auto basis = sl2_matrices();
  basis.push_back(ExactMatrix::identity(2));
  return from_matrices("gl2", basis);
}

LieAlgebra LieAlgebra::sl3() {
  return from_matrices("sl3", {difference(unit(3, 0, 0), unit(3, 1, 1)),
                               difference(unit(3, 1, 1), unit(3, 2, 2)), unit(3, 0, 1),
                               unit(3, 0, 2), unit(3, 1, 2), unit(3, 1, 0), unit(3, 2, 0),
                               unit(3, 2, 1)});
}

LieAlgebra LieAlgebra::by_name(const std::string& name) {
  if (name == "sl2") return sl2();
  if (name == "gl2") return gl2();
  if (name == "sl3") return sl3();
  throw ValidationError("unknown Lie algebra '" + name + "' (built-ins: sl2, gl2, sl3)");
}

}  // namespace rhwb
