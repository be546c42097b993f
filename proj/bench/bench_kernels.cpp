#include <benchmark/benchmark.h>

#include "rhwb/immersion/experiment.hpp"
#include "rhwb/monodromy/representation.hpp"
#include "rhwb/multiplication/theta.hpp"
#include "rhwb/systems/system.hpp"

using namespace rhwb;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_LazarsfeldScan(benchmark::State& state) {
  const Curve curve = PlaneQuartic::klein();
  for (auto _ : state) {
    auto report = lazarsfeld_scan(curve, 64, 3, 2024, mode(state));
    benchmark::DoNotOptimize(report.successes);
  }
  label(state);
}

void BM_Monodromy(benchmark::State& state) {
  const HyperellipticCurve exact({0, 1, 4, 9, 16, 25, 36});
  const auto curve = NumericCurve::from(exact);
  const auto loops = build_loops(curve, 0.25);
  const auto system = NumericSystem::from(sample_system(exact, LieAlgebra::sl2(), 3, 2));
  MonodromyOptions options;
  options.execution = mode(state);
  for (auto _ : state) {
    auto rep = monodromy(curve, system, loops, options);
    benchmark::DoNotOptimize(rep.relation_residual);
  }
  label(state);
}

void BM_TraceJacobian(benchmark::State& state) {
  const Curve exact = HyperellipticCurve({0, 1, 4, 9, 16});
  const auto center = make_coordinates(sample_center(exact, 1, 1));
  const auto loops = build_loops(center.curve, 0.25);
  const auto rep = monodromy(center.curve, center.system, loops);
  const auto words = standard_word_list(2);
  for (auto _ : state) {
    auto j = trace_jacobian(center, loops, rep.meshes, words, 1e-5, mode(state));
    benchmark::DoNotOptimize(j.data());
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_LazarsfeldScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Monodromy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceJacobian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
