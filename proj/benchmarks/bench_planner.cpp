#include <random>

#include <benchmark/benchmark.h>

#include "twosr/planner.hpp"
#include "twosr/sampling.hpp"
#include "twosr/simulator.hpp"

using namespace twosr;

static void BM_PlanRandomPair(benchmark::State& state) {
  const GeometryParams g;
  std::mt19937_64 rng(3);
  const AgentConfig q0 = random_config(rng, g);
  const AgentConfig qt = random_config(rng, g);
  for (auto _ : state) {
    const PlanResult r = plan(q0, qt, PlannerParams{}, g);
    state.counters["steps"] = static_cast<double>(r.steps());
  }
}
BENCHMARK(BM_PlanRandomPair)->Unit(benchmark::kMillisecond);

static void BM_Rollout(benchmark::State& state) {
  const GeometryParams g;
  std::mt19937_64 rng(3);
  const AgentConfig q0 = random_config(rng, g);
  const PlanResult r = plan(q0, random_config(rng, g), PlannerParams{}, g);
  SimOptions opt;
  opt.thermal_gating = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(rollout(q0, r, opt));
}
BENCHMARK(BM_Rollout)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_FkStep(benchmark::State& state) {
  const GeometryParams g;
  const AgentConfig q{0, 0, 0.3, 30, -20};
  const auto integ = state.range(0) == 0 ? Integrator::Euler : Integrator::RK4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fk_step(q, {true, false}, {0.01, -0.01, 0, 0, 0}, 0.05, g, integ));
  }
}
BENCHMARK(BM_FkStep)->Arg(0)->Arg(1);
