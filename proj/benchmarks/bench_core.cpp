#include <benchmark/benchmark.h>

#include "ple/classify.hpp"
#include "ple/energy.hpp"
#include "ple/phase.hpp"

using namespace ple;

namespace {
const ProblemParams kBall = ProblemParams::make(1, 1, 3, 2, 2);
const ProblemParams kCrit = ProblemParams::make(1, 1, 3, 5, 5);
const ProblemParams kMix = ProblemParams::make(1, 2, 3, 2.5, 2.0, Operator::MMinus);
}  // namespace

static void BM_ShootBall(benchmark::State& state) {
  for (auto _ : state) {
    auto o = shoot(1.0, 1.3, kBall);
    benchmark::DoNotOptimize(o.event_radius);
  }
}
BENCHMARK(BM_ShootBall);

static void BM_ShootCritical(benchmark::State& state) {
  for (auto _ : state) {
    auto o = shoot(1.0, 1.0, kCrit);
    benchmark::DoNotOptimize(o.slope_u);
  }
}
BENCHMARK(BM_ShootCritical);

static void BM_PhaseDiagonal(benchmark::State& state) {
  auto seed = manifold_seed(StationaryName::N0, 1, 1, 1e-4, kCrit);
  for (auto _ : state) {
    auto run = integrate_phase(seed, 0.0, 40.0, kCrit);
    benchmark::DoNotOptimize(run.t_stop);
  }
}
BENCHMARK(BM_PhaseDiagonal);

static void BM_ClassifyPQ(benchmark::State& state) {
  for (auto _ : state) {
    auto v = classify_pq(2.0, 3.0, kBall);
    benchmark::DoNotOptimize(v.eta_star);
  }
}
BENCHMARK(BM_ClassifyPQ);

static void BM_StationaryCatalog(benchmark::State& state) {
  for (auto _ : state) {
    auto cat = stationary_catalog(kMix);
    benchmark::DoNotOptimize(cat.back().dim_stable);
  }
}
BENCHMARK(BM_StationaryCatalog);

static void BM_EnergyEval(benchmark::State& state) {
  RadialState s{0.7, 0.9, -0.3, 0.8, -0.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_radial(s, sigma_step2(kMix), kMix));
    benchmark::DoNotOptimize(energy_derivative_radial(s, sigma_step2(kMix), kMix));
  }
}
BENCHMARK(BM_EnergyEval);

BENCHMARK_MAIN();
