// Serial reference vs OpenMP kernels. Set OMP_NUM_THREADS to vary the pool.
#include <benchmark/benchmark.h>

#include <vector>

#include "germflow/fields.hpp"
#include "germflow/quadrature.hpp"
#include "germflow/regularity.hpp"
#include "germflow/variation.hpp"

using namespace germflow;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

void BM_TailSequence(benchmark::State& state) {
  const FieldSpec X = FieldSpec::make(Family::XtildeAlpha, 1.0);
  const FieldSpec Y = field_from_s(SGenSpec(1.0));
  const LogCoord d = std::min(X.delta_coord(), Y.delta_coord());
  const Integrand f{[&](LogCoord p) { return evaluate(X, p).deviation - evaluate(Y, p).deviation; },
                    Density::Z};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tail_sequence(f, d, d.w() + 40, 256, {1e-11}, policy_of(state)));
  }
}

void BM_Classify(benchmark::State& state) {
  const FieldSpec X = FieldSpec::make(Family::XtildeAlpha, 1.0);
  const FieldSpec Y = FieldSpec::make(Family::XbarAlpha, 0.5);
  ClassifyParams params;
  params.policy = policy_of(state);
  params.samples = 128;
  for (auto _ : state) benchmark::DoNotOptimize(classify_pair(X, Y, params));
}

void BM_ConjugacyVariation(benchmark::State& state) {
  const std::vector<double> grid = geometric_grid(100, 10000, 24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjugacy_variation_curve(1.0, 0.0, grid, policy_of(state)));
  }
}

}  // namespace

// Argument 0 runs the serial reference, 1 the parallel kernel.
BENCHMARK(BM_TailSequence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConjugacyVariation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
