#include "rhwb/curves/curve.hpp"

#include <sstream>

#include "rhwb/errors.hpp"

namespace rhwb {

HyperellipticCurve::HyperellipticCurve(std::vector<ExactScalar> branch_points)
    : branch_points_(std::move(branch_points)) {
  const int n = degree();
  genus_ = (n - 1) / 2;
  if (genus_ < 2) {
    throw ValidationError("hyperelliptic curve needs at least 5 branch points (genus >= 2), got " +
                          std::to_string(n));
  }
  for (std::size_t i = 0; i < branch_points_.size(); ++i)
    for (std::size_t j = i + 1; j < branch_points_.size(); ++j)
      if (branch_points_[i] == branch_points_[j]) {
        throw ValidationError("hyperelliptic curve: branch points " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide (" + branch_points_[i].to_string() +
                              ")");
      }
}

HyperellipticCurve HyperellipticCurve::consecutive(int genus) {
  std::vector<ExactScalar> pts;
  for (int k = 0; k <= 2 * genus; ++k) pts.emplace_back(k);
  return HyperellipticCurve(std::move(pts));
}

std::vector<ExactScalar> HyperellipticCurve::f_coefficients() const {
  std::vector<ExactScalar> f{1};
  for (const auto& lambda : branch_points_) {
    std::vector<ExactScalar> next(f.size() + 1);
    for (std::size_t k = 0; k < f.size(); ++k) {
      next[k + 1] += f[k];
      next[k] -= lambda * f[k];
    }
    f = std::move(next);
  }
  return f;
}

std::vector<std::complex<double>> HyperellipticCurve::numeric_branch_points() const {
  std::vector<std::complex<double>> out;
  out.reserve(branch_points_.size());
  for (const auto& b : branch_points_) out.push_back(b.to_complex());
  return out;
}

const std::array<Monomial, 15>& PlaneQuartic::monomial_order() {
  static const std::array<Monomial, 15> order = [] {
    std::array<Monomial, 15> out{};
    std::size_t k = 0;
    for (int a = 4; a >= 0; --a)
      for (int b = 4 - a; b >= 0; --b) out[k++] = {a, b, 4 - a - b};
    return out;
  }();
  return order;
}

namespace {

std::array<ExactScalar, 15> coefficients_of(const std::vector<std::pair<Monomial, long>>& terms) {
  std::array<ExactScalar, 15> out{};
  const auto& order = PlaneQuartic::monomial_order();
  for (const auto& [m, c] : terms)
    for (std::size_t k = 0; k < order.size(); ++k)
      if (order[k] == m) out[k] = c;
  return out;
}

}  // namespace

PlaneQuartic::PlaneQuartic(std::array<ExactScalar, 15> coefficients, Family family)
    : coefficients_(std::move(coefficients)), family_(family) {}

PlaneQuartic PlaneQuartic::fermat() {
  return {coefficients_of({{{4, 0, 0}, 1}, {{0, 4, 0}, 1}, {{0, 0, 4}, 1}}), Family::fermat};
}

PlaneQuartic PlaneQuartic::klein() {
  return {coefficients_of({{{3, 1, 0}, 1}, {{0, 3, 1}, 1}, {{1, 0, 3}, 1}}), Family::klein};
}

PlaneQuartic PlaneQuartic::user(const std::array<ExactScalar, 15>& coefficients,
                                bool smoothness_asserted) {
  if (!smoothness_asserted) {
    throw ValidationError(
        "quartic: user-supplied quartics require an explicit smoothness assertion "
        "(smoothness_asserted)");
  }
  bool all_zero = true;
  for (const auto& c : coefficients) all_zero = all_zero && c.is_zero();
  if (all_zero) throw ValidationError("quartic: all coefficients are zero");
  return {coefficients, Family::user};
}

Polynomial PlaneQuartic::form() const {
  Polynomial p;
  for (std::size_t k = 0; k < 15; ++k) p.add_term(monomial_order()[k], coefficients_[k]);
  return p;
}

std::string PlaneQuartic::smoothness_certificate() const {
  switch (family_) {
    case Family::fermat: return "builtin:fermat";
    case Family::klein: return "builtin:klein";
    case Family::user: return "user-asserted";
  }
  return "unknown";
}

int Curve::genus() const {
  return std::visit([](const auto& c) { return c.genus(); }, model_);
}

std::string Curve::describe() const {
  std::ostringstream os;
  if (is_hyperelliptic()) {
    os << "hyperelliptic g=" << genus() << " branch points {";
    const auto& pts = hyperelliptic().branch_points();
    for (std::size_t k = 0; k < pts.size(); ++k) os << (k ? ", " : "") << pts[k];
    os << "}";
  } else {
    os << "quartic (" << quartic().smoothness_certificate() << ")";
  }
  return os.str();
}

}  // namespace rhwb
