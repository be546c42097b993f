#include "rhwb/monodromy/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rhwb/errors.hpp"

namespace rhwb {

NumericCurve NumericCurve::from(const HyperellipticCurve& curve) {
  return {curve.numeric_branch_points()};
}

Complex NumericCurve::f(Complex x) const {
  Complex v = 1.0;
  for (const auto& b : branch_points) v *= x - b;
  return v;
}

Complex continue_sheet(const NumericCurve& curve, Complex x, Complex reference) {
  const Complex r = std::sqrt(curve.f(x));
  return std::norm(r - reference) <= std::norm(r + reference) ? r : -r;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

void annotate_sheets(Loop& loop, const NumericCurve& curve, Complex base_y) {
  loop.sheets.assign(loop.vertices.size(), Complex{});
  if (loop.vertices.empty()) return;
  Complex y = continue_sheet(curve, loop.vertices.front(), base_y);
  loop.sheets[0] = y;
  for (std::size_t k = 1; k < loop.vertices.size(); ++k) {
    const Complex a = loop.vertices[k - 1];
    const Complex b = loop.vertices[k];
    // Substeps small against the distance to the nearest branch point keep
    // the nearest-root rule on the right sheet.
    double near = std::abs(b - a);
    for (const auto& lambda : curve.branch_points) near = std::min(near, segment_distance(lambda, a, b));
    const int steps = std::max(8, static_cast<int>(std::ceil(16.0 * std::abs(b - a) / std::max(near, 1e-6))));
    for (int s = 1; s <= steps; ++s) {
      const Complex x = a + (b - a) * (static_cast<double>(s) / steps);
      y = continue_sheet(curve, x, y);
    }
    loop.sheets[k] = y;
  }
}

namespace {

std::vector<Complex> lasso(Complex base, Complex lambda, double radius) {
  std::vector<Complex> pts;
  const Complex dir = (base - lambda) / std::abs(base - lambda);
  const double theta0 = std::arg(dir);
  pts.push_back(lambda + radius * dir);
  for (int j = 1; j <= kLassoPolygonSides; ++j) {
    const double theta = theta0 + 2.0 * std::numbers::pi * j / kLassoPolygonSides;
    pts.push_back(j == kLassoPolygonSides ? pts.front() : lambda + std::polar(radius, theta));
  }
  pts.push_back(base);
  return pts;
}

Loop make_loop(std::string name, std::vector<int> word, const LoopSystem& sys) {
  Loop loop;
  loop.name = std::move(name);
  loop.lasso_word = std::move(word);
  loop.vertices.push_back(sys.base_point);
  for (int k : loop.lasso_word) {
    const auto pts = lasso(sys.base_point, sys.ordered_branch_points[static_cast<std::size_t>(k)],
                           sys.lasso_radius);
    loop.vertices.insert(loop.vertices.end(), pts.begin(), pts.end());
  }
  return loop;
}

}  // namespace

LoopSystem build_loops(const NumericCurve& curve, double clearance) {
  const auto& pts = curve.branch_points;
  if (!(clearance > 0.0)) throw ValidationError("build_loops: clearance must be positive");
  if (pts.size() % 2 == 0 || pts.size() < 5) {
    throw ValidationError("build_loops: needs the odd-degree model with 2g+1 >= 5 finite branch points");
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) <= 2.0 * clearance) {
        std::ostringstream os;
        os << "build_loops: clearance infeasible, branch points " << i << " and " << j
           << " are " << std::abs(pts[i] - pts[j]) << " apart (need > " << 2.0 * clearance << ")";
        throw ValidationError(os.str());
      }

  double re_min = pts[0].real(), re_max = pts[0].real(), im_min = pts[0].imag(), spread = 0.0;
  for (const auto& p : pts) {
    re_min = std::min(re_min, p.real());
    re_max = std::max(re_max, p.real());
    im_min = std::min(im_min, p.imag());
    for (const auto& q : pts) spread = std::max(spread, std::abs(p - q));
  }

  LoopSystem sys;
  sys.clearance = clearance;
  sys.lasso_radius = clearance / std::cos(std::numbers::pi / kLassoPolygonSides);
  sys.base_point = Complex(0.5 * (re_min + re_max), im_min - std::max(0.5 * spread, 4.0 * clearance));
  sys.base_y = std::sqrt(curve.f(sys.base_point));

  sys.ordered_branch_points = pts;
  std::sort(sys.ordered_branch_points.begin(), sys.ordered_branch_points.end(),
            [&](Complex a, Complex b) { return std::arg(a - sys.base_point) < std::arg(b - sys.base_point); });

  // Every lasso must keep its clearance from every branch point.
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto poly = lasso(sys.base_point, sys.ordered_branch_points[k], sys.lasso_radius);
    Complex prev = sys.base_point;
    for (const auto& v : poly) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const double d = segment_distance(sys.ordered_branch_points[j], prev, v);
        if (d < clearance * (1.0 - 1e-9)) {
          std::ostringstream os;
          os << "build_loops: clearance infeasible, lasso around branch point "
             << sys.ordered_branch_points[k] << " passes within " << d << " of "
             << sys.ordered_branch_points[j];
          throw ValidationError(os.str());
        }
      }
      prev = v;
    }
  }

  const int g = curve.genus();
  for (int k = 0; k < g; ++k) {
    std::vector<int> a_word{2 * k + 1};
    for (int j = 0; j <= 2 * k; ++j) a_word.push_back(j);
    sys.loops.push_back(make_loop("a" + std::to_string(k + 1), std::move(a_word), sys));
    sys.loops.push_back(make_loop("b" + std::to_string(k + 1), {2 * k + 1, 2 * k + 2}, sys));
  }
  for (auto& loop : sys.loops) {
    annotate_sheets(loop, curve, sys.base_y);
    if (std::abs(loop.sheets.back() - sys.base_y) > std::abs(loop.sheets.back() + sys.base_y)) {
      throw std::logic_error("build_loops: loop " + loop.name + " does not close on its sheet");
    }
  }
  return sys;
}

Loop reverse_loop(const Loop& loop) {
  Loop out = loop;
  out.name = loop.name + "^-1";
  std::reverse(out.vertices.begin(), out.vertices.end());
  std::reverse(out.sheets.begin(), out.sheets.end());
  std::reverse(out.lasso_word.begin(), out.lasso_word.end());
  return out;
}

Loop refine_loop(const Loop& loop, const NumericCurve& curve, Complex base_y) {
  Loop out = loop;
  out.vertices.clear();
  for (std::size_t k = 0; k < loop.vertices.size(); ++k) {
    if (k > 0) out.vertices.push_back(0.5 * (loop.vertices[k - 1] + loop.vertices[k]));
    out.vertices.push_back(loop.vertices[k]);
  }
  annotate_sheets(out, curve, base_y);
  return out;
}

double min_vertex_clearance(const LoopSystem& loops, const NumericCurve& curve) {
  double best = INFINITY;
  for (const auto& loop : loops.loops)
    for (const auto& v : loop.vertices)
      for (const auto& b : curve.branch_points) best = std::min(best, std::abs(v - b));
  return best;
}

}  // namespace rhwb
