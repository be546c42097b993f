#include "rhwb/monodromy/representation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <exception>

#include "rhwb/errors.hpp"

namespace rhwb {

double operator_norm(const Mat2& m) {
  Eigen::JacobiSVD<Mat2> svd(m);
  return svd.singularValues()(0);
}

double relation_residual(const std::vector<Mat2>& generators) {
  if (generators.size() % 2 != 0) throw ValidationError("relation_residual: need an even number of generators");
  Mat2 prod = Mat2::Identity();
  for (std::size_t k = 0; k < generators.size(); k += 2) {
    const Mat2& a = generators[k];
    const Mat2& b = generators[k + 1];
    prod = prod * a * b * a.inverse() * b.inverse();
  }
  return operator_norm(prod - Mat2::Identity());
}

namespace {

MonodromyRepresentation assemble(std::vector<Transport> transports, const MonodromyOptions& options) {
  MonodromyRepresentation rep;
  rep.relation_tolerance = options.relation_tolerance;
  rep.det_tolerance = options.det_tolerance;
  for (auto& t : transports) {
    rep.matrices.push_back(t.matrix);
    rep.det_residuals.push_back(std::abs(t.matrix.determinant() - Complex(1.0)));
    rep.meshes.push_back(std::move(t.mesh));
  }
  rep.relation_residual = relation_residual(rep.matrices);
  rep.valid = rep.relation_residual <= options.relation_tolerance;
  for (double d : rep.det_residuals) rep.valid = rep.valid && d <= options.det_tolerance;
  return rep;
}

template <typename F>
std::vector<Transport> run_loops(std::size_t count, Execution execution, F&& integrate) {
  std::vector<Transport> out(count);
  if (execution == Execution::serial) {
    for (std::size_t k = 0; k < count; ++k) out[k] = integrate(k);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
    try {
      out[static_cast<std::size_t>(k)] = integrate(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

MonodromyRepresentation monodromy(const NumericCurve& curve, const NumericSystem& system,
                                  const LoopSystem& loops, const MonodromyOptions& options) {
  if (system.coefficients.size() != static_cast<std::size_t>(curve.genus())) {
    throw ValidationError("monodromy: system and curve genus differ");
  }
  auto transports = run_loops(loops.loops.size(), options.execution, [&](std::size_t k) {
    return integrate_loop(curve, system, loops.loops[k], loops.base_y, options.ode);
  });
  return assemble(std::move(transports), options);
}

MonodromyRepresentation monodromy_on_meshes(const NumericCurve& curve, const NumericSystem& system,
                                            const LoopSystem& loops,
                                            const std::vector<StepMesh>& meshes,
                                            const MonodromyOptions& options) {
  if (meshes.size() != loops.loops.size()) throw ValidationError("monodromy: one mesh per loop required");
  auto transports = run_loops(loops.loops.size(), options.execution, [&](std::size_t k) {
    return integrate_loop_on_mesh(curve, system, loops.loops[k], loops.base_y, meshes[k]);
  });
  return assemble(std::move(transports), options);
}

std::vector<Word> standard_word_list(int genus) {
  if (genus < 2) throw ValidationError("standard_word_list: genus must be at least 2");
  const int n = 2 * genus;
  auto name = [](int k) { return std::string(k % 2 == 0 ? "a" : "b") + std::to_string(k / 2 + 1); };
  std::vector<Word> words;
  for (int k = 0; k < n; ++k) words.push_back({name(k), {{k, 1}}});
  for (int i = 0; i < genus; ++i) words.push_back({name(2 * i) + name(2 * i + 1), {{2 * i, 1}, {2 * i + 1, 1}}});
  words.push_back({"a1b1a2", {{0, 1}, {1, 1}, {2, 1}}});
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (p % 2 == 0 && q == p + 1) continue;
      words.push_back({name(p) + name(q), {{p, 1}, {q, 1}}});
    }
  for (int i = 0; i < genus; ++i)
    words.push_back({name(2 * i) + name(2 * i + 1) + "^-1", {{2 * i, 1}, {2 * i + 1, -1}}});
  return words;
}

Mat2 evaluate_word(const Word& word, const std::vector<Mat2>& generators) {
  Mat2 m = Mat2::Identity();
  for (const auto& [k, e] : word.letters) {
    if (k < 0 || static_cast<std::size_t>(k) >= generators.size()) {
      throw ValidationError("evaluate_word: letter out of range in " + word.label);
    }
    const Mat2& g = generators[static_cast<std::size_t>(k)];
    m = m * (e > 0 ? g : Mat2(g.inverse()));
  }
  return m;
}

TraceVector trace_vector(const MonodromyRepresentation& rep, const std::vector<Word>& words) {
  if (!rep.valid) throw ValidationError("trace_vector: representation is flagged invalid");
  TraceVector out;
  out.words = words;
  for (const auto& w : words) out.values.push_back(evaluate_word(w, rep.matrices).trace());
  return out;
}

TraceVector trace_vector(const MonodromyRepresentation& rep) {
  return trace_vector(rep, standard_word_list(static_cast<int>(rep.matrices.size() / 2)));
}

IrreducibilityVerdict irreducibility_probe(const std::vector<Mat2>& generators, double tolerance) {
  IrreducibilityVerdict verdict;
  const Mat2* pivot = nullptr;
  for (const auto& g : generators) {
    const Mat2 traceless = g - 0.5 * g.trace() * Mat2::Identity();
    if (operator_norm(traceless) > tolerance * std::max(1.0, operator_norm(g))) {
      pivot = &g;
      break;
    }
  }
  if (pivot == nullptr) {
    verdict.common_eigenvector_found = true;
    verdict.witness << 1.0, 0.0;
    return verdict;
  }
  Eigen::ComplexEigenSolver<Mat2> solver(*pivot);
  for (int c = 0; c < 2; ++c) {
    Eigen::Vector2cd v = solver.eigenvectors().col(c);
    v /= v.norm();
    bool fixed = true;
    for (const auto& g : generators) {
      const Eigen::Vector2cd gv = g * v;
      const Eigen::Vector2cd off = gv - v * v.dot(gv);
      if (off.norm() > tolerance * std::max(1.0, operator_norm(g))) {
        fixed = false;
        break;
      }
    }
    if (fixed) {
      // Present the witness with its largest entry real and positive.
      const int big = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
      v *= std::conj(v(big)) / std::abs(v(big));
      verdict.common_eigenvector_found = true;
      verdict.witness = v;
      return verdict;
    }
  }
  return verdict;
}

IrreducibilityVerdict irreducibility_probe(const MonodromyRepresentation& rep, double tolerance) {
  return irreducibility_probe(rep.matrices, tolerance);
}

}  // namespace rhwb
