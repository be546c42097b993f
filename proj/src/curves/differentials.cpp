#include "rhwb/curves/differentials.hpp"

#include <map>
#include <utility>

#include "rhwb/errors.hpp"
#include "rhwb/field/exact_matrix.hpp"

namespace rhwb {

std::string to_string(DenominatorClass d) {
  switch (d) {
    case DenominatorClass::y: return "y";
    case DenominatorClass::y_squared: return "y2";
    case DenominatorClass::canonical: return "canonical";
  }
  return "?";
}

namespace {

int y_power(DenominatorClass d) {
  switch (d) {
    case DenominatorClass::y: return 1;
    case DenominatorClass::y_squared: return 2;
    case DenominatorClass::canonical: return 0;
  }
  return 0;
}

}  // namespace

Differential operator*(const Differential& a, const Differential& b) {
  const bool quartic_a = a.denominator == DenominatorClass::canonical;
  const bool quartic_b = b.denominator == DenominatorClass::canonical;
  if (quartic_a != quartic_b) {
    throw std::logic_error("cannot multiply differentials from different curve models");
  }
  Differential out;
  out.weight = a.weight + b.weight;
  out.numerator = a.numerator * b.numerator;
  if (quartic_a) {
    out.denominator = DenominatorClass::canonical;
    return out;
  }
  switch (y_power(a.denominator) + y_power(b.denominator)) {
    case 1: out.denominator = DenominatorClass::y; break;
    case 2: out.denominator = DenominatorClass::y_squared; break;
    default:
      throw std::logic_error("product of differentials has unsupported denominator y^" +
                             std::to_string(y_power(a.denominator) + y_power(b.denominator)));
  }
  return out;
}

DifferentialBasis::DifferentialBasis(Curve curve, int weight, std::vector<Differential> elements)
    : curve_(std::move(curve)), weight_(weight), elements_(std::move(elements)) {
  for (const auto& e : elements_)
    if (e.weight != weight_) throw std::logic_error("basis element has the wrong weight");
}

Differential DifferentialBasis::combine(const std::vector<ExactScalar>& coordinates) const {
  if (coordinates.size() != elements_.size()) {
    throw ValidationError("coordinate vector length " + std::to_string(coordinates.size()) +
                          " does not match basis size " + std::to_string(elements_.size()));
  }
  if (elements_.empty()) return {weight_, DenominatorClass::y, {}};
  // Elements of one basis may mix denominator classes (weight 2, hyperelliptic
  // g >= 3); combinations are only formed inside a single class.
  Differential out{weight_, elements_.front().denominator, {}};
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (coordinates[i].is_zero()) continue;
    if (elements_[i].denominator != out.denominator && !out.numerator.is_zero()) {
      throw std::logic_error("combine: mixed denominator classes");
    }
    out.denominator = elements_[i].denominator;
    out.numerator += elements_[i].numerator * coordinates[i];
  }
  return out;
}

DifferentialBasis canonical_basis(const Curve& curve) {
  std::vector<Differential> elements;
  if (curve.is_hyperelliptic()) {
    for (int i = 0; i < curve.genus(); ++i)
      elements.push_back({1, DenominatorClass::y, Polynomial::monomial({i, 0, 0})});
  } else {
    for (const Monomial& m : {Monomial{1, 0, 0}, Monomial{0, 1, 0}, Monomial{0, 0, 1}})
      elements.push_back({1, DenominatorClass::canonical, Polynomial::monomial(m)});
  }
  return {curve, 1, std::move(elements)};
}

DifferentialBasis quadratic_basis(const Curve& curve) {
  std::vector<Differential> elements;
  const int g = curve.genus();
  if (curve.is_hyperelliptic()) {
    for (int i = 0; i <= 2 * g - 2; ++i)
      elements.push_back({2, DenominatorClass::y_squared, Polynomial::monomial({i, 0, 0})});
    for (int j = 0; j <= g - 3; ++j)
      elements.push_back({2, DenominatorClass::y, Polynomial::monomial({j, 0, 0})});
  } else {
    for (const Monomial& m : {Monomial{2, 0, 0}, Monomial{0, 2, 0}, Monomial{0, 0, 2},
                              Monomial{1, 1, 0}, Monomial{1, 0, 1}, Monomial{0, 1, 1}})
      elements.push_back({2, DenominatorClass::canonical, Polynomial::monomial(m)});
  }
  return {curve, 2, std::move(elements)};
}

std::vector<ExactScalar> express_in_basis(const Differential& d, const DifferentialBasis& basis) {
  if (d.weight != basis.weight()) {
    throw ValidationError("express_in_basis: weight " + std::to_string(d.weight) +
                          " differential against a weight " + std::to_string(basis.weight()) +
                          " basis");
  }
  // Rows are (denominator class, monomial) keys. Quadratic forms on a quartic
  // never need reduction modulo F: degree 2 < 4.
  using Key = std::pair<DenominatorClass, Monomial>;
  std::map<Key, std::size_t> rows;
  auto row_of = [&](const Key& k) {
    auto [it, inserted] = rows.try_emplace(k, rows.size());
    return it->second;
  };
  for (const auto& e : basis.elements())
    for (const auto& [m, c] : e.numerator.terms()) row_of({e.denominator, m});
  const std::size_t spanned_rows = rows.size();
  for (const auto& [m, c] : d.numerator.terms()) row_of({d.denominator, m});

  std::vector<std::string> unexplained;
  if (rows.size() > spanned_rows) {
    for (const auto& [m, c] : d.numerator.terms())
      if (rows.at({d.denominator, m}) >= spanned_rows) {
        unexplained.push_back(c.to_string() + "*x^" + std::to_string(m[0]) + "y^" +
                              std::to_string(m[1]) + "z^" + std::to_string(m[2]) + "/" +
                              to_string(d.denominator));
      }
    throw MembershipError("express_in_basis: differential is not in the span of the basis",
                          std::move(unexplained));
  }

  ExactMatrix a(rows.size(), basis.size());
  std::vector<ExactScalar> b(rows.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (const auto& [m, c] : basis[j].numerator.terms()) a(rows.at({basis[j].denominator, m}), j) = c;
  for (const auto& [m, c] : d.numerator.terms()) b[rows.at({d.denominator, m})] = c;

  auto x = solve_exact(a, b);
  if (!x) {
    for (const auto& [m, c] : d.numerator.terms())
      unexplained.push_back(c.to_string() + "*x^" + std::to_string(m[0]) + "/" +
                            to_string(d.denominator));
    throw MembershipError("express_in_basis: inconsistent coordinates", std::move(unexplained));
  }
  return std::move(*x);
}

}  // namespace rhwb
