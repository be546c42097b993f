#include "rhwb/field/exact_matrix.hpp"

#include <stdexcept>
#include <utility>

#include "rhwb/errors.hpp"

namespace rhwb {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<ExactScalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ValidationError("ExactMatrix: entry count does not match shape");
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<ExactScalar>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("ExactMatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<ExactScalar> ExactMatrix::column(std::size_t c) const {
  std::vector<ExactScalar> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool ExactMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("ExactMatrix: shape mismatch in product");
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace {

struct GaussianInteger {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

// a*b - c*d
GaussianInteger cross(const GaussianInteger& a, const GaussianInteger& b, const GaussianInteger& c,
                      const GaussianInteger& d) {
  return {a.re * b.re - a.im * b.im - (c.re * d.re - c.im * d.im),
          a.re * b.im + a.im * b.re - (c.re * d.im + c.im * d.re)};
}

// Exact quotient in Z[i]; the caller guarantees divisibility.
void divide_exact(GaussianInteger& a, const GaussianInteger& b) {
  if (sgn(b.im) == 0) {
    mpz_divexact(a.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_divexact(a.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    return;
  }
  const mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  mpz_divexact(a.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(a.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
}

std::vector<GaussianInteger> clear_denominators(const ExactMatrix& m) {
  std::vector<GaussianInteger> out(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class scale = 1;
    for (const auto& e : m.row(r)) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.re().get_den_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.im().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& e = m(r, c);
      auto& g = out[r * m.cols() + c];
      g.re = scale / e.re().get_den() * e.re().get_num();
      g.im = scale / e.im().get_den() * e.im().get_num();
    }
  }
  return out;
}

}  // namespace

std::size_t exact_rank(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  auto a = clear_denominators(m);
  auto at = [&](std::size_t r, std::size_t c) -> GaussianInteger& { return a[r * cols + c]; };

  GaussianInteger previous{1, 0};
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = col; c < cols; ++c) std::swap(at(pivot, c), at(rank, c));

    const GaussianInteger p = at(rank, col);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const GaussianInteger lead = at(r, col);
      for (std::size_t c = col + 1; c < cols; ++c) {
        GaussianInteger v = cross(p, at(r, c), lead, at(rank, c));
        divide_exact(v, previous);
        at(r, c) = std::move(v);
      }
      at(r, col) = {};
    }
    previous = p;
    ++rank;
  }
  return rank;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<std::size_t> reduce(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    const ExactScalar inv = ExactScalar(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const ExactScalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

ExactMatrix row_space_basis(const ExactMatrix& m) {
  ExactMatrix work = m;
  const auto pivots = reduce(work);
  ExactMatrix out(pivots.size(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = work(r, c);
  return out;
}

std::optional<std::vector<ExactScalar>> solve_exact(const ExactMatrix& a,
                                                    std::span<const ExactScalar> b) {
  if (b.size() != a.rows()) throw ValidationError("solve_exact: right-hand side length mismatch");
  ExactMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<ExactScalar> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

}  // namespace rhwb
