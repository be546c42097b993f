#include "rhwb/monodromy/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rhwb/errors.hpp"
#include "rhwb/field/float_matrix.hpp"

namespace rhwb {

NumericSystem NumericSystem::from(const DifferentialSystem& system) {
  if (!system.curve().is_hyperelliptic() || !system.curve().hyperelliptic().odd_degree()) {
    throw ValidationError("monodromy: requires an odd-degree hyperelliptic curve");
  }
  if (system.algebra().name() != "sl2") {
    throw ValidationError("monodromy: algebra must be sl2, got " + system.algebra().name());
  }
  std::vector<Mat2> basis;
  for (const auto& m : sl2_matrices()) basis.push_back(to_float(m));
  const auto& c = system.coefficients();
  NumericSystem out;
  out.coefficients.assign(c.cols(), Mat2::Zero());
  for (std::size_t i = 0; i < c.cols(); ++i)
    for (std::size_t j = 0; j < c.rows(); ++j) out.coefficients[i] += c(j, i).to_complex() * basis[j];
  return out;
}

Mat2 NumericSystem::connection(Complex x, Complex y) const {
  Mat2 acc = Mat2::Zero();
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc / y;
}

namespace {

// Dormand-Prince 5(4)
constexpr std::array<long double, 7> kC{0.0L, 1.0L / 5, 3.0L / 10, 4.0L / 5, 8.0L / 9, 1.0L, 1.0L};
constexpr long double kA[7][6] = {
    {},
    {1.0L / 5},
    {3.0L / 40, 9.0L / 40},
    {44.0L / 45, -56.0L / 15, 32.0L / 9},
    {19372.0L / 6561, -25360.0L / 2187, 64448.0L / 6561, -212.0L / 729},
    {9017.0L / 3168, -355.0L / 33, 46732.0L / 5247, 49.0L / 176, -5103.0L / 18656},
    {35.0L / 384, 0.0L, 500.0L / 1113, 125.0L / 192, -2187.0L / 6784, 11.0L / 84}};
constexpr std::array<long double, 7> kE{71.0L / 57600, 0.0L, -71.0L / 16695, 71.0L / 1920,
                                        -17253.0L / 339200, 22.0L / 525, -1.0L / 40};

template <typename Real>
using CplxT = std::complex<Real>;
template <typename Real>
using MatT = Eigen::Matrix<CplxT<Real>, 2, 2>;

template <typename Real>
struct StepResult {
  MatT<Real> y5;
  MatT<Real> increment;
  MatT<Real> err;
  CplxT<Real> y_end;
  bool sheet_ok = true;
};

template <typename Real>
struct Segment {
  std::vector<CplxT<Real>> branch_points;
  std::vector<MatT<Real>> coefficients;
  CplxT<Real> a;
  CplxT<Real> d;

  Segment(const NumericCurve& curve, const NumericSystem& system, Complex from, Complex to) {
    for (const auto& b : curve.branch_points) branch_points.emplace_back(b.real(), b.imag());
    for (const auto& c : system.coefficients) coefficients.push_back(c.cast<CplxT<Real>>());
    a = CplxT<Real>(from.real(), from.imag());
    d = CplxT<Real>(to.real(), to.imag()) - a;
  }

  CplxT<Real> root(CplxT<Real> x, CplxT<Real> reference) const {
    CplxT<Real> f = 1;
    for (const auto& b : branch_points) f *= x - b;
    const CplxT<Real> r = std::sqrt(f);
    return std::norm(r - reference) <= std::norm(r + reference) ? r : -r;
  }

  MatT<Real> connection(CplxT<Real> x, CplxT<Real> y) const {
    MatT<Real> acc = MatT<Real>::Zero();
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc / y;
  }

  Real branch_distance(CplxT<Real> x) const {
    Real r = INFINITY;
    for (const auto& b : branch_points) r = std::min(r, std::abs(x - b));
    return r;
  }

  StepResult<Real> step(Real s, Real h, const MatT<Real>& y, CplxT<Real> sheet) const {
    std::array<MatT<Real>, 7> k;
    StepResult<Real> r;
    const Real jump = std::abs(sheet);
    const CplxT<Real> x0 = a + s * d;
    // Within half the distance to the nearest branch point the nearest root
    // is the continuation.
    const Real reach = Real(0.5) * branch_distance(x0);
    for (int i = 0; i < 7; ++i) {
      MatT<Real> yi = y;
      for (int j = 0; j < i; ++j) yi += (h * Real(kA[i][j])) * k[j];
      const CplxT<Real> x = a + (s + Real(kC[i]) * h) * d;
      const CplxT<Real> w = root(x, sheet);
      if (std::abs(w - sheet) >= jump || std::abs(x - x0) > reach) r.sheet_ok = false;
      if (i == 6) r.y_end = w;
      k[i] = d * connection(x, w) * yi;
    }
    r.increment = MatT<Real>::Zero();
    for (int j = 0; j < 6; ++j) r.increment += (h * Real(kA[6][j])) * k[j];
    r.y5 = y + r.increment;
    r.err = MatT<Real>::Zero();
    for (int j = 0; j < 7; ++j) r.err += (h * Real(kE[j])) * k[j];
    return r;
  }
};

// Kahan-compensated state: long loops take thousands of steps and the
// finite-difference Jacobian divides roundoff by the step.
template <typename Real>
struct State {
  MatT<Real> y = MatT<Real>::Identity();
  MatT<Real> carry = MatT<Real>::Zero();

  void add(const MatT<Real>& increment) {
    const MatT<Real> t = increment - carry;
    const MatT<Real> next = y + t;
    carry = (next - y) - t;
    y = next;
  }
};

template <typename M>
bool finite(const M& m) {
  return m.allFinite();
}

template <typename Real>
void check_sheet(const Loop& loop, std::size_t vertex, CplxT<Real> y) {
  if (loop.sheets.size() != loop.vertices.size()) return;
  const CplxT<Real> expect(loop.sheets[vertex].real(), loop.sheets[vertex].imag());
  if (std::abs(y - expect) > std::abs(y + expect)) {
    std::ostringstream os;
    os << "transport: lift of loop " << loop.name << " left its sheet at vertex " << vertex;
    throw NumericalError(os.str());
  }
}

void check_loop(const Loop& loop) {
  if (loop.vertices.size() < 2) throw ValidationError("transport: loop " + loop.name + " has no segments");
}

}  // namespace

Transport integrate_loop(const NumericCurve& curve, const NumericSystem& system, const Loop& loop,
                         Complex base_y, const OdeOptions& options) {
  check_loop(loop);
  if (!(options.tol > 0.0) || !(options.min_step > 0.0)) {
    throw ValidationError("transport: tolerance and min_step must be positive");
  }
  constexpr double kAlpha = 0.17, kBeta = 0.04, kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 10.0;

  Transport out;
  State<double> state;
  const Mat2& y = state.y;
  Complex sheet = continue_sheet(curve, loop.vertices.front(), base_y);
  double h = 0.05;
  out.mesh.resize(loop.vertices.size() - 1);
  for (std::size_t seg = 0; seg + 1 < loop.vertices.size(); ++seg) {
    const Segment<double> segment(curve, system, loop.vertices[seg], loop.vertices[seg + 1]);
    auto& mesh = out.mesh[seg];
    double s = 0.0;
    double err_prev = 1.0;
    h = std::min(h, 1.0);
    while (s < 1.0) {
      const bool last = s + h >= 1.0;
      const double step = last ? 1.0 - s : h;
      if (out.accepted + out.rejected >= options.max_steps) {
        throw ConvergenceError("transport: step budget exhausted on loop " + loop.name);
      }
      const auto r = segment.step(s, step, y, sheet);
      double err = 0.0;
      if (r.sheet_ok && finite(r.y5)) {
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const double scale = options.tol * (1.0 + std::max(std::abs(y(i, j)), std::abs(r.y5(i, j))));
            err = std::max(err, std::abs(r.err(i, j)) / scale);
          }
      } else {
        err = INFINITY;
      }
      if (err <= 1.0) {
        ++out.accepted;
        s = last ? 1.0 : s + step;
        mesh.push_back(s);
        state.add(r.increment);
        sheet = r.y_end;
        const double e = std::max(err, 1e-10);
        double factor = kSafety * std::pow(e, -kAlpha) * std::pow(err_prev, kBeta);
        factor = std::clamp(factor, kMinFactor, kMaxFactor);
        err_prev = e;
        if (!last) h = step * factor;
      } else {
        ++out.rejected;
        const double factor = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2)) : kMinFactor;
        h = step * factor;
        if (h < options.min_step) {
          std::ostringstream os;
          os << "transport: step size underflow on loop " << loop.name << " segment " << seg;
          throw ConvergenceError(os.str());
        }
      }
    }
    if (!finite(y)) throw NumericalError("transport: non-finite state on loop " + loop.name);
    check_sheet<double>(loop, seg + 1, sheet);
  }
  if (std::abs(sheet - base_y) > std::abs(sheet + base_y)) {
    throw NumericalError("transport: loop " + loop.name + " does not close on its starting sheet");
  }
  out.matrix = y;
  return out;
}

namespace {

template <typename Real>
MatT<Real> replay(const NumericCurve& curve, const NumericSystem& system, const Loop& loop,
                  Complex base_y, const StepMesh& mesh) {
  check_loop(loop);
  if (mesh.size() + 1 != loop.vertices.size()) {
    throw ValidationError("transport: mesh does not match loop " + loop.name);
  }
  State<Real> state;
  const Complex start = continue_sheet(curve, loop.vertices.front(), base_y);
  CplxT<Real> sheet(start.real(), start.imag());
  for (std::size_t seg = 0; seg < mesh.size(); ++seg) {
    const Segment<Real> segment(curve, system, loop.vertices[seg], loop.vertices[seg + 1]);
    Real s = 0;
    for (double next : mesh[seg]) {
      const auto r = segment.step(s, Real(next) - s, state.y, sheet);
      if (!r.sheet_ok) throw NumericalError("transport: replayed step left its sheet on loop " + loop.name);
      state.add(r.increment);
      sheet = r.y_end;
      s = next;
    }
    if (!finite(state.y)) throw NumericalError("transport: non-finite state on loop " + loop.name);
    check_sheet<Real>(loop, seg + 1, sheet);
  }
  const CplxT<Real> base(base_y.real(), base_y.imag());
  if (std::abs(sheet - base) > std::abs(sheet + base)) {
    throw NumericalError("transport: loop " + loop.name + " does not close on its starting sheet");
  }
  return state.y;
}

}  // namespace

Transport integrate_loop_on_mesh(const NumericCurve& curve, const NumericSystem& system,
                                 const Loop& loop, Complex base_y, const StepMesh& mesh) {
  Transport out;
  out.matrix = replay<double>(curve, system, loop, base_y, mesh);
  out.mesh = mesh;
  for (const auto& m : mesh) out.accepted += m.size();
  return out;
}

Mat2Ext integrate_loop_on_mesh_extended(const NumericCurve& curve, const NumericSystem& system,
                                        const Loop& loop, Complex base_y, const StepMesh& mesh) {
  return replay<long double>(curve, system, loop, base_y, mesh);
}

}  // namespace rhwb
