#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rhwb/field/gaussian_rational.hpp"

namespace rhwb {

/// Dense row-major matrix over Q(i). Shapes with zero rows or columns are legal.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<ExactScalar> entries);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<ExactScalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<ExactScalar>& entries() const { return entries_; }

  ExactScalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const ExactScalar& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const ExactScalar> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::vector<ExactScalar> column(std::size_t c) const;

  ExactMatrix transpose() const;
  bool is_zero() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactScalar> entries_;
};

/// Rank over Q(i) by fraction-free (Bareiss) elimination. Each row is first
/// cleared of denominators, so elimination runs over the Gaussian integers
/// and every division is exact.
std::size_t exact_rank(const ExactMatrix& m);

/// Nonzero rows of the reduced row echelon form: a canonical basis of the
/// row space.
ExactMatrix row_space_basis(const ExactMatrix& m);

/// Some x with a * x = b, or nullopt when b is outside the column space.
std::optional<std::vector<ExactScalar>> solve_exact(const ExactMatrix& a,
                                                    std::span<const ExactScalar> b);

}  // namespace rhwb
