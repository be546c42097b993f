#pragma once

#include <json.hpp>

#include <string>

#include "rhwb/immersion/experiment.hpp"
#include "rhwb/monodromy/representation.hpp"
#include "rhwb/multiplication/theta.hpp"
#include "rhwb/systems/system.hpp"

namespace rhwb::io {

using Json = nlohmann::ordered_json;

/// [re_num, re_den, im_num, im_den]; integers that overflow int64 are
/// written as decimal strings. Parsing also accepts a bare integer.
Json exact_to_json(const ExactScalar& v);
ExactScalar exact_from_json(const Json& j, const std::string& field);

Json exact_matrix_to_json(const ExactMatrix& m);
ExactMatrix exact_matrix_from_json(const Json& j, const std::string& field);

/// [re, im]; non-finite parts become null.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);
/// Row-major [[re,im],[re,im],[re,im],[re,im]].
Json mat2_to_json(const Mat2& m);
Json real_to_json(double v);

Json curve_to_json(const Curve& curve);
/// {"model": "hyperelliptic", "branch_points": [...]} or
/// {"model": "quartic", "family": "fermat"|"klein"|"user", "coefficients": [...15],
///  "smoothness_asserted": bool}.
Curve curve_from_json(const Json& j, const std::string& field = "curve");

/// "sl2" | "gl2" | "sl3" or {"name", "dimension", "structure_constants"}.
Json algebra_to_json(const LieAlgebra& algebra);
LieAlgebra algebra_from_json(const Json& j, const std::string& field = "algebra");

Json system_to_json(const DifferentialSystem& system);
/// The curve is taken from the enclosing document unless the object has its own.
DifferentialSystem system_from_json(const Json& j, const Curve& curve, const std::string& field = "system");

Json noether_to_json(const NoetherVerdict& v, const MultiplicationMatrix& m);
Json scan_to_json(const ScanReport& r);
Json criterion_to_json(const CriterionVerdict& v);
Json dimension_to_json(const DimensionReport& r);
Json loops_to_json(const LoopSystem& loops);
Json monodromy_to_json(const MonodromyRepresentation& rep);
Json traces_to_json(const TraceVector& t);
Json irreducibility_to_json(const IrreducibilityVerdict& v);
Json immersion_to_json(const ImmersionReport& r);
Json ladder_to_json(const LadderReport& r);

}  // namespace rhwb::io
