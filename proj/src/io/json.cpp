#include "rhwb/io/json.hpp"

#include <cmath>

#include "rhwb/errors.hpp"

namespace rhwb::io {

namespace {

Json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ValidationError(field + ": not a decimal integer");
    return z;
  }
  throw ValidationError(field + ": expected an integer");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

std::string index_field(const std::string& field, std::size_t k) {
  return field + "[" + std::to_string(k) + "]";
}

}  // namespace

Json exact_to_json(const ExactScalar& v) {
  return Json::array({integer_to_json(v.re().get_num()), integer_to_json(v.re().get_den()),
                      integer_to_json(v.im().get_num()), integer_to_json(v.im().get_den())});
}

ExactScalar exact_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned()) return {mpq_class(integer_from_json(j, field))};
  require(j.is_array() && j.size() == 4, field + ": expected [re_num, re_den, im_num, im_den]");
  const auto rn = integer_from_json(j[0], field), rd = integer_from_json(j[1], field);
  const auto in = integer_from_json(j[2], field), id = integer_from_json(j[3], field);
  require(rd != 0 && id != 0, field + ": zero denominator");
  return ExactScalar::from_parts(rn, rd, in, id);
}

Json exact_matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(exact_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix exact_matrix_from_json(const Json& j, const std::string& field) {
  require(j.is_array() && !j.empty(), field + ": expected a non-empty array of rows");
  std::vector<std::vector<ExactScalar>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    require(j[r].is_array(), index_field(field, r) + ": expected an array");
    std::vector<ExactScalar> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      row.push_back(exact_from_json(j[r][c], index_field(index_field(field, r), c)));
    }
    rows.push_back(std::move(row));
  }
  for (const auto& row : rows) require(row.size() == rows.front().size(), field + ": rows have different lengths");
  return ExactMatrix::from_rows(rows);
}

Json real_to_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json complex_to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), field + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json mat2_to_json(const Mat2& m) {
  return Json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1)), complex_to_json(m(1, 0)),
                      complex_to_json(m(1, 1))});
}

Json curve_to_json(const Curve& curve) {
  Json j;
  if (curve.is_hyperelliptic()) {
    const auto& h = curve.hyperelliptic();
    j["model"] = "hyperelliptic";
    j["genus"] = h.genus();
    Json pts = Json::array();
    for (const auto& p : h.branch_points()) pts.push_back(exact_to_json(p));
    j["branch_points"] = std::move(pts);
    return j;
  }
  const auto& q = curve.quartic();
  j["model"] = "quartic";
  j["genus"] = 3;
  j["family"] = q.family() == PlaneQuartic::Family::fermat  ? "fermat"
                : q.family() == PlaneQuartic::Family::klein ? "klein"
                                                            : "user";
  Json coeffs = Json::array();
  for (const auto& c : q.coefficients()) coeffs.push_back(exact_to_json(c));
  j["coefficients"] = std::move(coeffs);
  if (q.family() == PlaneQuartic::Family::user) j["smoothness_asserted"] = true;
  j["smoothness_certificate"] = q.smoothness_certificate();
  return j;
}

Curve curve_from_json(const Json& j, const std::string& field) {
  require(j.is_object(), field + ": expected an object");
  require(j.contains("model") && j["model"].is_string(), field + ".model: missing (hyperelliptic | quartic)");
  const auto model = j["model"].get<std::string>();
  if (model == "hyperelliptic") {
    require(j.contains("branch_points") && j["branch_points"].is_array(),
            field + ".branch_points: expected an array");
    std::vector<ExactScalar> pts;
    const auto& bp = j["branch_points"];
    for (std::size_t k = 0; k < bp.size(); ++k) {
      pts.push_back(exact_from_json(bp[k], index_field(field + ".branch_points", k)));
    }
    try {
      return HyperellipticCurve(std::move(pts));
    } catch (const ValidationError& e) {
      throw ValidationError(field + ".branch_points: " + e.what());
    }
  }
  if (model == "quartic") {
    const std::string family = j.value("family", std::string("user"));
    if (family == "fermat") return PlaneQuartic::fermat();
    if (family == "klein") return PlaneQuartic::klein();
    require(family == "user", field + ".family: expected fermat | klein | user");
    require(j.contains("coefficients") && j["coefficients"].is_array() && j["coefficients"].size() == 15,
            field + ".coefficients: expected 15 coefficients");
    std::array<ExactScalar, 15> coeffs;
    for (std::size_t k = 0; k < 15; ++k) {
      coeffs[k] = exact_from_json(j["coefficients"][k], index_field(field + ".coefficients", k));
    }
    const bool asserted = j.value("smoothness_asserted", false);
    require(asserted, field + ".smoothness_asserted: user quartics must assert smoothness");
    return PlaneQuartic::user(coeffs, asserted);
  }
  throw ValidationError(field + ".model: unknown model '" + model + "'");
}

Json algebra_to_json(const LieAlgebra& algebra) {
  if (algebra.name() == "sl2" || algebra.name() == "gl2" || algebra.name() == "sl3") return algebra.name();
  Json j;
  j["name"] = algebra.name();
  j["dimension"] = algebra.dimension();
  Json c = Json::array();
  for (const auto& v : algebra.constants()) c.push_back(exact_to_json(v));
  j["structure_constants"] = std::move(c);
  return j;
}

LieAlgebra algebra_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return LieAlgebra::by_name(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(field + ": " + e.what());
    }
  }
  require(j.is_object(), field + ": expected a name or a structure-constant table");
  require(j.contains("dimension") && j["dimension"].is_number_integer(), field + ".dimension: expected a count");
  const auto signed_n = j["dimension"].get<long long>();
  require(signed_n > 0 && signed_n <= 64, field + ".dimension: out of range");
  const auto n = static_cast<std::size_t>(signed_n);
  require(j.contains("structure_constants") && j["structure_constants"].is_array() &&
              j["structure_constants"].size() == n * n * n,
          field + ".structure_constants: expected dimension^3 entries");
  std::vector<ExactScalar> c;
  for (std::size_t k = 0; k < n * n * n; ++k) {
    c.push_back(exact_from_json(j["structure_constants"][k], index_field(field + ".structure_constants", k)));
  }
  try {
    return LieAlgebra(j.value("name", std::string("custom")), n, std::move(c));
  } catch (const ValidationError& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

Json system_to_json(const DifferentialSystem& system) {
  Json j;
  j["curve"] = curve_to_json(system.curve());
  j["algebra"] = algebra_to_json(system.algebra());
  j["coefficients"] = exact_matrix_to_json(system.coefficients());
  return j;
}

DifferentialSystem system_from_json(const Json& j, const Curve& curve, const std::string& field) {
  require(j.is_object(), field + ": expected an object");
  const Curve c = j.contains("curve") ? curve_from_json(j["curve"], field + ".curve") : curve;
  const LieAlgebra algebra =
      j.contains("algebra") ? algebra_from_json(j["algebra"], field + ".algebra") : LieAlgebra::sl2();
  require(j.contains("coefficients"), field + ".coefficients: missing");
  auto m = exact_matrix_from_json(j["coefficients"], field + ".coefficients");
  try {
    return DifferentialSystem(c, algebra, std::move(m));
  } catch (const ValidationError& e) {
    throw ValidationError(field + ".coefficients: " + e.what());
  }
}

Json noether_to_json(const NoetherVerdict& v, const MultiplicationMatrix& m) {
  Json j;
  j["verdict"] = v.surjective ? "surjective" : "not_surjective";
  j["rank"] = v.rank;
  j["corank"] = v.corank;
  j["rows"] = m.matrix.rows();
  j["cols"] = m.matrix.cols();
  j["domain"] = m.domain_description;
  j["matrix"] = exact_matrix_to_json(m.matrix);
  return j;
}

Json scan_to_json(const ScanReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["successes"] = r.successes;
  j["w_dim"] = r.w_dim;
  j["seed"] = r.seed;
  j["target_rank"] = r.target_rank;
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json fj;
    fj["trial"] = f.trial;
    fj["trial_seed"] = f.trial_seed;
    fj["rank"] = f.rank;
    Json gens = Json::array();
    for (const auto& g : f.generators) {
      Json gj = Json::array();
      for (const auto& v : g) gj.push_back(exact_to_json(v));
      gens.push_back(std::move(gj));
    }
    fj["generators"] = std::move(gens);
    failures.push_back(std::move(fj));
  }
  j["failures"] = std::move(failures);
  return j;
}

Json criterion_to_json(const CriterionVerdict& v) {
  Json j;
  j["verdict"] = v.holds ? "holds" : "fails";
  j["v_dimension"] = v.v_dimension;
  j["theta_v_rank"] = v.theta_v_rank;
  j["target_dimension"] = v.target_dimension;
  return j;
}

Json dimension_to_json(const DimensionReport& r) {
  Json j;
  j["genus"] = r.genus;
  j["d"] = r.d;
  j["c"] = r.c;
  j["dim_character_variety"] = r.dim_character_variety;
  j["dim_syst"] = r.dim_syst;
  j["dim_teichmuller"] = r.dim_teichmuller;
  j["gauge_dimension"] = r.gauge_dimension;
  return j;
}

Json loops_to_json(const LoopSystem& loops) {
  Json j;
  j["base_point"] = complex_to_json(loops.base_point);
  j["base_y"] = complex_to_json(loops.base_y);
  j["clearance"] = loops.clearance;
  j["lasso_radius"] = loops.lasso_radius;
  Json order = Json::array();
  for (const auto& p : loops.ordered_branch_points) order.push_back(complex_to_json(p));
  j["ordered_branch_points"] = std::move(order);
  Json list = Json::array();
  for (const auto& loop : loops.loops) {
    Json lj;
    lj["name"] = loop.name;
    lj["lasso_word"] = loop.lasso_word;
    Json vs = Json::array(), ss = Json::array();
    for (const auto& v : loop.vertices) vs.push_back(complex_to_json(v));
    for (const auto& s : loop.sheets) ss.push_back(complex_to_json(s));
    lj["vertices"] = std::move(vs);
    lj["sheets"] = std::move(ss);
    list.push_back(std::move(lj));
  }
  j["loops"] = std::move(list);
  return j;
}

Json monodromy_to_json(const MonodromyRepresentation& rep) {
  Json j;
  Json ms = Json::array();
  for (const auto& m : rep.matrices) ms.push_back(mat2_to_json(m));
  j["matrices"] = std::move(ms);
  j["relation_residual"] = real_to_json(rep.relation_residual);
  Json dets = Json::array();
  for (double d : rep.det_residuals) dets.push_back(real_to_json(d));
  j["det_residuals"] = std::move(dets);
  j["valid"] = rep.valid;
  j["relation_tolerance"] = rep.relation_tolerance;
  j["det_tolerance"] = rep.det_tolerance;
  Json steps = Json::array();
  for (const auto& mesh : rep.meshes) {
    std::size_t n = 0;
    for (const auto& seg : mesh) n += seg.size();
    steps.push_back(n);
  }
  j["accepted_steps"] = std::move(steps);
  return j;
}

Json traces_to_json(const TraceVector& t) {
  Json j = Json::array();
  for (std::size_t k = 0; k < t.words.size(); ++k) {
    Json w;
    w["word"] = t.words[k].label;
    w["trace"] = complex_to_json(t.values[k]);
    j.push_back(std::move(w));
  }
  return j;
}

Json irreducibility_to_json(const IrreducibilityVerdict& v) {
  Json j;
  j["verdict"] = v.common_eigenvector_found ? "common_eigenvector_found" : "probably_irreducible";
  if (v.common_eigenvector_found) {
    j["witness"] = Json::array({complex_to_json(v.witness(0)), complex_to_json(v.witness(1))});
  }
  return j;
}

Json immersion_to_json(const ImmersionReport& r) {
  Json j;
  j["genus"] = r.genus;
  j["hypothesis"] = to_string(r.hypothesis);
  j["dim_character_variety"] = r.dim_character_variety;
  j["dim_syst"] = r.dim_syst;
  j["parameter_count"] = r.parameter_labels.size();
  j["parameters"] = r.parameter_labels;
  j["words"] = r.word_labels;
  j["estimated_rank"] = r.estimated_rank;
  j["estimated_real_rank"] = r.estimated_real_rank;
  j["real_rank_even"] = r.real_rank_even;
  j["gap_ratio"] = real_to_json(r.gap_ratio);
  j["gap_against_noise_floor"] = r.gap_against_noise_floor;
  j["noise_floor"] = real_to_json(r.noise_floor);
  j["fd_steps_used"] = r.fd_steps_used;
  Json sv = Json::array();
  for (double s : r.singular_values) sv.push_back(real_to_json(s));
  j["singular_values"] = std::move(sv);
  j["block_column_norms"] = {{"branch_points", real_to_json(r.branch_block_norm)},
                             {"system", real_to_json(r.system_block_norm)}};
  j["criterion_verdict"] = criterion_to_json(r.criterion_verdict);
  j["irreducibility"] = irreducibility_to_json(r.irreducibility);
  j["center_relation_residual"] = real_to_json(r.center_relation_residual);
  Json traces = Json::array();
  for (const auto& t : r.center_traces) traces.push_back(complex_to_json(t));
  j["center_traces"] = std::move(traces);
  Json jac = Json::array();
  for (Eigen::Index row = 0; row < r.jacobian.rows(); ++row) {
    Json rj = Json::array();
    for (Eigen::Index col = 0; col < r.jacobian.cols(); ++col) rj.push_back(real_to_json(r.jacobian(row, col)));
    jac.push_back(std::move(rj));
  }
  j["jacobian"] = std::move(jac);
  j["loops"] = loops_to_json(r.loops);
  return j;
}

Json ladder_to_json(const LadderReport& r) {
  Json j;
  j["steps"] = r.steps;
  j["ranks"] = r.ranks;
  j["rank_stable"] = r.rank_stable;
  j["max_singular_value_deviation"] = real_to_json(r.max_singular_value_deviation);
  Json reports = Json::array();
  for (const auto& rep : r.reports) reports.push_back(immersion_to_json(rep));
  j["experiments"] = std::move(reports);
  return j;
}

}  // namespace rhwb::io
