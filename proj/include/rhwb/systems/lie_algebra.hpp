#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rhwb/field/exact_matrix.hpp"

namespace rhwb {

/// A finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c(i, j, k) e_k, validated for antisymmetry and Jacobi.
/// The commutator and center dimensions are computed, and the algebra is
/// accepted only when they add up to the total dimension (reductive case).
class LieAlgebra {
 public:
  /// `constants` is indexed (i * n + j) * n + k.
  LieAlgebra(std::string name, std::size_t dimension, std::vector<ExactScalar> constants);

  /// Basis (H, E, F) with [H,E] = 2E, [H,F] = -2F, [E,F] = H.
  static LieAlgebra sl2();
  /// Basis (H, E, F, I): sl2 plus the identity.
  static LieAlgebra gl2();
  /// Basis (H1, H2, E12, E13, E23, E21, E31, E32), H1 = E11-E22, H2 = E22-E33.
  static LieAlgebra sl3();
  static LieAlgebra by_name(const std::string& name);

  /// Structure constants of the span of `basis` under the matrix commutator.
  /// The basis must be linearly independent and closed under brackets.
  static LieAlgebra from_matrices(std::string name, const std::vector<ExactMatrix>& basis);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }
  /// dim [g, g]
  std::size_t commutator_dimension() const { return commutator_dimension_; }
  /// dim of the center
  std::size_t center_dimension() const { return center_dimension_; }

  const ExactScalar& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dimension_ + j) * dimension_ + k];
  }
  const std::vector<ExactScalar>& constants() const { return constants_; }

  std::vector<ExactScalar> bracket(const std::vector<ExactScalar>& a,
                                   const std::vector<ExactScalar>& b) const;

 private:
  std::string name_;
  std::size_t dimension_;
  std::vector<ExactScalar> constants_;
  std::size_t commutator_dimension_ = 0;
  std::size_t center_dimension_ = 0;
};

/// 2x2 matrices of the built-in sl2 basis (H, E, F).
const std::vector<ExactMatrix>& sl2_matrices();

}  // namespace rhwb
