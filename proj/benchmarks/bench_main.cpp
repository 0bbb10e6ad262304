#include <random>

#include <benchmark/benchmark.h>

#include "lowrank/als_implicit.hpp"
#include "lowrank/cp_tensor.hpp"
#include "lowrank/explicit_stepper.hpp"
#include "lowrank/ht_tensor.hpp"
#include "lowrank/kinetic_models.hpp"

using namespace lowrank;

namespace {

std::vector<BasisSpec> cube(int dims, int modes) { return std::vector<BasisSpec>(dims, BasisSpec(modes, 1.0)); }

AdvectionSpec spiral(int modes) {
  AdvectionSpec spec;
  spec.c.resize(2, 2);
  spec.c << 0.5, 1.5, -0.5, 0.5;
  spec.modes = modes;
  return spec;
}

}  // namespace

static void BM_CpInnerProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto specs = cube(6, static_cast<int>(state.range(0)));
  const CPTensor a = random_cp(specs, 8, rng);
  const CPTensor b = random_cp(specs, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(inner_product(a, b));
}
BENCHMARK(BM_CpInnerProduct)->Arg(11)->Arg(31)->Arg(65);

static void BM_CpRankReduce(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto specs = cube(3, 21);
  const CPTensor f = random_cp(specs, 6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank_reduce_als(f, 3, 1e-6));
}
BENCHMARK(BM_CpRankReduce)->Unit(benchmark::kMillisecond);

static void BM_HtTruncate(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int dims = static_cast<int>(state.range(0));
  const HTTensor h = HTTensor::from_cp(random_cp(cube(dims, 33), 12, rng));
  for (auto _ : state) benchmark::DoNotOptimize(truncate(h, 6, 1e-10));
}
BENCHMARK(BM_HtTruncate)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Ab2AdvectionStep(benchmark::State& state) {
  const AdvectionSpec spec = spiral(static_cast<int>(state.range(0)));
  const SeparableOperator op = advection_operator(spec.c);
  ExplicitConfig config;
  config.dt = 1e-3;
  config.r_max = 8;
  const HTTensor f0 = HTTensor::from_cp(advection_initial(spec));
  const HTTensor f1 = startup_step(f0, op, config).tensor;
  for (auto _ : state) benchmark::DoNotOptimize(ab2_step(f0, f1, op, config));
}
BENCHMARK(BM_Ab2AdvectionStep)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

static void BM_BgkImplicitStep(benchmark::State& state) {
  BGKSpec spec;
  spec.modes = static_cast<int>(state.range(0));
  const CrankNicolsonPair pair = crank_nicolson_pair(bgk_model_operator(spec), spec.dt_seconds());
  ALSStepConfig config;
  config.warm_start_perturbation = 1e-3;
  ImplicitStepper stepper(spec.specs(), pair, config, Forcing{equilibrium_cp(spec), spec.nu()});
  const CPTensor f = pad_rank(perturbed_ic(spec, 0.3), 2);
  for (auto _ : state) benchmark::DoNotOptimize(stepper.step(f));
}
BENCHMARK(BM_BgkImplicitStep)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
