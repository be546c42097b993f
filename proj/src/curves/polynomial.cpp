#include "rhwb/curves/polynomial.hpp"

#include <algorithm>

namespace rhwb {

Polynomial Polynomial::monomial(const Monomial& m, const ExactScalar& coefficient) {
  Polynomial p;
  p.add_term(m, coefficient);
  return p;
}

Polynomial Polynomial::univariate(const std::vector<ExactScalar>& coefficients) {
  Polynomial p;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    p.add_term({static_cast<int>(k), 0, 0}, coefficients[k]);
  return p;
}

ExactScalar Polynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? ExactScalar{} : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
  return d;
}

void Polynomial::add_term(const Monomial& m, const ExactScalar& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      out.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
  return out;
}

std::complex<double> Polynomial::evaluate(std::complex<double> x, std::complex<double> y,
                                          std::complex<double> z) const {
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : terms_)
    sum += c.to_complex() * std::pow(x, m[0]) * std::pow(y, m[1]) * std::pow(z, m[2]);
  return sum;
}

}  // namespace rhwb
