#include <benchmark/benchmark.h>

#include <random>

#include "torusctl/control/gramian.hpp"
#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/fourier/random_field.hpp"
#include "torusctl/saturation/saturation.hpp"

using namespace torusctl;

namespace {

std::shared_ptr<const GalerkinSpace> space(int M) { return std::make_shared<const GalerkinSpace>(M); }

void BM_SparseQ(benchmark::State& state) {
  const int M = int(state.range(0));
  std::mt19937_64 rng(1);
  const FieldD u = random_field(M, 3, 1.0, rng), v = random_field(M, 3, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_Q(u, v));
}
BENCHMARK(BM_SparseQ)->Arg(1)->Arg(2)->Arg(3);

void BM_DenseB(benchmark::State& state) {
  const auto sp = space(int(state.range(0)));
  std::mt19937_64 rng(1);
  const DenseField u = sp->from_field(random_field(sp->cutoff(), 3, 1.0, rng));
  for (auto _ : state) benchmark::DoNotOptimize(sp->B(u, u));
}
BENCHMARK(BM_DenseB)->Arg(2)->Arg(3)->Arg(4);

void BM_StepNS(benchmark::State& state) {
  const auto sp = space(int(state.range(0)));
  std::mt19937_64 rng(1);
  const DenseField u = sp->from_field(random_field(sp->cutoff(), 3, 0.5, rng));
  const SimConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(step_ns(*sp, u, 0.0, 1e-3, cfg, ForcingSpec{}));
}
BENCHMARK(BM_StepNS)->Arg(2)->Arg(3)->Arg(4);

void BM_SaturationLevels(benchmark::State& state) {
  const int levels = int(state.range(0));
  for (auto _ : state) {
    SaturationChain chain(ModeSet::unit_axes());
    for (int i = 0; i < levels; ++i) chain.advance();
    benchmark::DoNotOptimize(chain.current().rank());
  }
}
BENCHMARK(BM_SaturationLevels)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GramianAssembly(benchmark::State& state) {
  const auto sp = space(2);
  const ModeSet k = ModeSet::unit_axes();
  const ReferenceTrajectory ref = build_reference(sp, k, make_observable_family(k, 1.0), 100.0);
  const Eigen::MatrixXd dirs = frame_basis(*sp, h_subspace(k, 1));
  GramianOptions opt;
  opt.segments = int(state.range(0));
  for (auto _ : state) {
    const GramianSolver g(sp, ref, SimConfig{}, dirs, opt);
    benchmark::DoNotOptimize(g.rank());
  }
}
BENCHMARK(BM_GramianAssembly)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
