#include "rhwb/immersion/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "rhwb/errors.hpp"
#include "rhwb/field/float_matrix.hpp"
#include "rhwb/rng.hpp"

namespace rhwb {

namespace {

constexpr std::size_t kRowH = 0, kRowE = 1, kRowF = 2;

// Coordinates (H, E, F) of a traceless 2x2 matrix.
Eigen::Vector3cd sl2_coordinates(const Mat2& m) { return {m(0, 0), m(0, 1), m(1, 0)}; }

Mat2 basis_matrix(std::size_t row) {
  Mat2 m = Mat2::Zero();
  if (row == kRowH) {
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
  } else if (row == kRowE) {
    m(0, 1) = 1.0;
  } else {
    m(1, 0) = 1.0;
  }
  return m;
}

Complex entry(const Mat2& b, std::size_t row) { return sl2_coordinates(b)(static_cast<Eigen::Index>(row)); }

void set_entry(Mat2& b, std::size_t row, Complex value) {
  b += (value - entry(b, row)) * basis_matrix(row);
}

std::string row_name(std::size_t row) { return row == kRowH ? "H" : row == kRowE ? "E" : "F"; }

// Monodromy and traces in long double along the center's meshes.
std::vector<ComplexExt> traces_at(const SystCoordinates& coords, const LoopSystem& loops,
                                  const std::vector<StepMesh>& meshes, const std::vector<Word>& words) {
  if (meshes.size() != loops.loops.size()) throw ValidationError("immersion: one mesh per loop required");
  std::vector<Mat2Ext> gens;
  for (std::size_t k = 0; k < loops.loops.size(); ++k) {
    gens.push_back(integrate_loop_on_mesh_extended(coords.curve, coords.system, loops.loops[k],
                                                   loops.base_y, meshes[k]));
  }
  std::vector<ComplexExt> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    Mat2Ext m = Mat2Ext::Identity();
    for (const auto& [k, e] : w.letters) {
      const Mat2Ext& g = gens.at(static_cast<std::size_t>(k));
      m = m * (e > 0 ? g : Mat2Ext(g.inverse()));
    }
    const ComplexExt t = m.trace();
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
      throw NumericalError("immersion: non-finite trace for word " + w.label);
    }
    out.push_back(t);
  }
  return out;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(FloatMatrix(m.cast<Complex>())).front();
}

}  // namespace

std::vector<Complex> SystCoordinates::parameters() const {
  std::vector<Complex> p;
  for (auto k : moving_branch_points) p.push_back(curve.branch_points[k]);
  for (const auto& [row, col] : free_entries) p.push_back(entry(system.coefficients[col], row));
  return p;
}

SystCoordinates SystCoordinates::at(const std::vector<Complex>& p) const {
  if (p.size() != parameter_count()) throw ValidationError("immersion: parameter vector has wrong length");
  SystCoordinates out = *this;
  std::size_t k = 0;
  for (auto idx : moving_branch_points) out.curve.branch_points[idx] = p[k++];
  for (const auto& [row, col] : free_entries) set_entry(out.system.coefficients[col], row, p[k++]);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> gauge_slice_entries() {
  return {{kRowE, 0}, {kRowF, 0}, {kRowH, 1}};
}

double slice_regularity(const NumericSystem& system) {
  if (system.coefficients.size() < 2) throw ValidationError("immersion: gauge slice needs genus >= 2");
  const auto slice = gauge_slice_entries();
  Eigen::Matrix3cd m;
  for (std::size_t x = 0; x < 3; ++x) {
    const Mat2 gen = basis_matrix(x);
    for (std::size_t r = 0; r < slice.size(); ++r) {
      const Mat2& b = system.coefficients[slice[r].second];
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)) = entry(gen * b - b * gen, slice[r].first);
    }
  }
  return std::abs(m.determinant());
}

SystCoordinates make_coordinates(const DifferentialSystem& center, bool free_gauge) {
  if (center.algebra().name() != "sl2") throw ValidationError("immersion: algebra must be sl2");
  if (!center.curve().is_hyperelliptic() || !center.curve().hyperelliptic().odd_degree()) {
    throw ValidationError("immersion: curve must be an odd-degree hyperelliptic model");
  }
  SystCoordinates c;
  c.curve = NumericCurve::from(center.curve().hyperelliptic());
  c.system = NumericSystem::from(center);

  const auto& exact_points = center.curve().hyperelliptic().branch_points();
  bool has_zero = false, has_one = false;
  for (std::size_t k = 0; k < exact_points.size(); ++k) {
    if (exact_points[k] == ExactScalar(0)) {
      has_zero = true;
    } else if (exact_points[k] == ExactScalar(1)) {
      has_one = true;
    } else {
      c.moving_branch_points.push_back(k);
      c.labels.push_back("branch_point[" + std::to_string(k) + "]");
    }
  }
  if (!has_zero || !has_one) {
    throw ValidationError("immersion: curve.branch_points must contain 0 and 1 (Mobius normalization)");
  }

  const auto slice = gauge_slice_entries();
  if (!free_gauge) {
    double scale = 1.0;
    for (const auto& b : c.system.coefficients) scale = std::max(scale, b.norm());
    if (slice_regularity(c.system) <= 1e-9 * scale * scale * scale) {
      throw ValidationError("immersion: gauge slice is not regular at the center system (resample)");
    }
  }
  for (std::size_t col = 0; col < c.system.coefficients.size(); ++col)
    for (std::size_t row = 0; row < 3; ++row) {
      const bool frozen = std::find(slice.begin(), slice.end(), std::pair{row, col}) != slice.end();
      if (frozen && !free_gauge) continue;
      c.free_entries.emplace_back(row, col);
      c.labels.push_back("B" + std::to_string(col + 1) + "." + row_name(row));
    }
  return c;
}

DifferentialSystem sample_center(const Curve& curve, std::uint64_t seed, long bound) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    auto sys = sample_system(curve, LieAlgebra::sl2(), derive_seed(seed, attempt), bound);
    if (slice_regularity(NumericSystem::from(sys)) > 0.5) return sys;
  }
  throw ValidationError("immersion: no gauge-regular system found for seed");
}

std::string to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::in_hypothesis: return "in_hypothesis";
    case Hypothesis::out_of_hypothesis: return "out_of_hypothesis";
    case Hypothesis::exploratory: return "exploratory";
  }
  return "exploratory";
}

GapAnalysis gap_analysis(const std::vector<double>& sv, std::size_t columns, double noise_floor,
                         double floor) {
  GapAnalysis out;
  if (sv.empty() || !(sv.front() > 0.0)) return out;
  const double top = sv.front();
  double best = -1.0;
  for (std::size_t r = 1; r <= sv.size(); ++r) {
    if (!(sv[r - 1] / top > floor)) break;
    double ratio;
    bool noise = false;
    if (r < sv.size()) {
      ratio = sv[r] > 0.0 ? sv[r - 1] / sv[r] : INFINITY;
    } else {
      if (r < columns && sv.size() < columns) break;
      ratio = noise_floor > 0.0 ? sv[r - 1] / noise_floor : INFINITY;
      noise = true;
    }
    if (ratio > best) {
      best = ratio;
      out.rank = r;
      out.gap_ratio = ratio;
      out.against_noise_floor = noise;
    }
  }
  return out;
}

Eigen::MatrixXd trace_jacobian(const SystCoordinates& center, const LoopSystem& loops,
                               const std::vector<StepMesh>& meshes, const std::vector<Word>& words,
                               double h, Execution execution) {
  if (!(h > 0.0)) throw ValidationError("immersion: fd_step must be positive");
  const std::size_t m = center.parameter_count();
  const auto p0 = center.parameters();
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(2 * words.size()), static_cast<Eigen::Index>(2 * m));

  auto column = [&](std::size_t c) {
    const std::size_t k = c / 2;
    const Complex dir = c % 2 == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    auto plus = p0, minus = p0;
    plus[k] += h * dir;
    minus[k] -= h * dir;
    const std::string where = " (direction " + center.labels[k] + (c % 2 == 0 ? ".re" : ".im") + ")";
    try {
      const auto tp = traces_at(center.at(plus), loops, meshes, words);
      const auto tm = traces_at(center.at(minus), loops, meshes, words);
      // Divide by the step actually taken after rounding the parameters.
      const ComplexExt step = (ComplexExt(plus[k]) - ComplexExt(minus[k])) / ComplexExt(dir);
      for (std::size_t w = 0; w < words.size(); ++w) {
        const Complex d(static_cast<Complex>((tp[w] - tm[w]) / step));
        jac(static_cast<Eigen::Index>(2 * w), static_cast<Eigen::Index>(c)) = d.real();
        jac(static_cast<Eigen::Index>(2 * w + 1), static_cast<Eigen::Index>(c)) = d.imag();
      }
    } catch (const ValidationError& e) {
      throw ValidationError(e.what() + where);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what() + where);
    }
  };

  if (execution == Execution::serial) {
    for (std::size_t c = 0; c < 2 * m; ++c) column(c);
    return jac;
  }
  std::vector<std::exception_ptr> errors(2 * m);
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(2 * m); ++c) {
    try {
      column(static_cast<std::size_t>(c));
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return jac;
}

ImmersionReport immersion_experiment(const DifferentialSystem& center, const ImmersionOptions& options) {
  if (!(options.fd_step > 0.0)) throw ValidationError("immersion: fd_step must be positive");
  if (!(options.clearance > 0.0)) throw ValidationError("immersion: clearance must be positive");
  if (!(options.fd_step < options.clearance / 4.0)) {
    throw ValidationError("immersion: fd_step must stay below clearance/4");
  }
  if (!(options.rank_floor > 0.0 && options.rank_floor < 1.0)) {
    throw ValidationError("immersion: rank_floor must lie in (0, 1)");
  }

  const SystCoordinates coords = make_coordinates(center, options.free_gauge);
  const int g = coords.curve.genus();
  const auto words = options.words.empty() ? standard_word_list(g) : options.words;

  ImmersionReport report;
  report.genus = g;
  report.parameter_labels = coords.labels;
  for (const auto& w : words) report.word_labels.push_back(w.label);
  const auto dims = dimension_report(g, LieAlgebra::sl2());
  report.dim_character_variety = dims.dim_character_variety;
  report.dim_syst = dims.dim_syst;
  report.loops = build_loops(coords.curve, options.clearance);

  MonodromyOptions mopts;
  mopts.ode = options.ode;
  mopts.relation_tolerance = options.relation_tolerance;
  mopts.det_tolerance = options.det_tolerance;
  mopts.execution = options.execution;
  const auto rep = monodromy(coords.curve, coords.system, report.loops, mopts);
  if (!rep.valid) {
    throw NumericalError("immersion: center monodromy is invalid (relation residual " +
                         std::to_string(rep.relation_residual) + ")");
  }
  report.center_relation_residual = rep.relation_residual;
  report.center_traces = trace_vector(rep, words).values;
  report.irreducibility = irreducibility_probe(rep);
  report.criterion_verdict = criterion_injective(center.curve(), center);

  const double h = options.fd_step;
  report.fd_steps_used = {h, h / 2.0};
  report.jacobian = trace_jacobian(coords, report.loops, rep.meshes, words, h, options.execution);
  const Eigen::MatrixXd half = trace_jacobian(coords, report.loops, rep.meshes, words, h / 2.0, options.execution);
  report.noise_floor = spectral_norm(report.jacobian - half);

  report.singular_values = singular_values(FloatMatrix(report.jacobian.cast<Complex>()));
  const auto gap = gap_analysis(report.singular_values, static_cast<std::size_t>(report.jacobian.cols()),
                                report.noise_floor, options.rank_floor);
  report.estimated_real_rank = gap.rank;
  report.estimated_rank = gap.rank / 2;
  report.real_rank_even = gap.rank % 2 == 0;
  report.gap_ratio = gap.gap_ratio;
  report.gap_against_noise_floor = gap.against_noise_floor;

  const auto branch_cols = static_cast<Eigen::Index>(2 * coords.moving_branch_points.size());
  report.branch_block_norm = report.jacobian.leftCols(branch_cols).norm();
  report.system_block_norm = report.jacobian.rightCols(report.jacobian.cols() - branch_cols).norm();

  if (g != 2) {
    report.hypothesis = Hypothesis::exploratory;
  } else if (report.criterion_verdict.holds && !report.irreducibility.common_eigenvector_found) {
    report.hypothesis = Hypothesis::in_hypothesis;
  } else {
    report.hypothesis = Hypothesis::out_of_hypothesis;
  }
  return report;
}

LadderReport fd_step_ladder(const DifferentialSystem& center, const std::vector<double>& steps,
                            const ImmersionOptions& options) {
  if (steps.size() < 3) throw ValidationError("fd_steps: the ladder needs at least 3 steps");
  for (double s : steps)
    if (!(s > 0.0)) throw ValidationError("fd_steps: every step must be positive");
  const auto [lo, hi] = std::minmax_element(steps.begin(), steps.end());
  if (*hi / *lo < 100.0 * (1.0 - 1e-12)) {
    throw ValidationError("fd_steps: the ladder must span at least two orders of magnitude");
  }
  LadderReport out;
  out.steps = steps;
  for (double s : steps) {
    ImmersionOptions o = options;
    o.fd_step = s;
    out.reports.push_back(immersion_experiment(center, o));
    out.ranks.push_back(out.reports.back().estimated_rank);
  }
  out.rank_stable = std::all_of(out.ranks.begin(), out.ranks.end(), [&](auto r) { return r == out.ranks.front(); });
  std::size_t r = out.reports.front().estimated_real_rank;
  for (const auto& rep : out.reports) r = std::min(r, rep.estimated_real_rank);
  for (std::size_t a = 0; a < out.reports.size(); ++a)
    for (std::size_t b = a + 1; b < out.reports.size(); ++b)
      for (std::size_t k = 0; k < r; ++k) {
        const double x = out.reports[a].singular_values[k];
        const double y = out.reports[b].singular_values[k];
        out.max_singular_value_deviation = std::max(out.max_singular_value_deviation, std::abs(x - y) / x);
      }
  return out;
}

}  // namespace rhwb
