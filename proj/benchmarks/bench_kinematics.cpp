#include <random>

#include <benchmark/benchmark.h>

#include "twosr/jacobian.hpp"
#include "twosr/sampling.hpp"
#include "twosr/spiral.hpp"
#include "twosr/wheel_model.hpp"

using namespace twosr;

static void BM_CcTransform(benchmark::State& state) {
  const GeometryParams g;
  double k = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cc_transform(k, 2, g));
    k = k > 100 ? 1.0 : k + 0.37;
  }
}
BENCHMARK(BM_CcTransform);

static void BM_HybridJacobian(benchmark::State& state) {
  const GeometryParams g;
  const StiffnessState s = StiffnessState::from_index(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  AgentConfig q = random_config(rng, g);
  q.kappa1 *= 0.4;
  q.kappa2 *= 0.4;
  for (auto _ : state) benchmark::DoNotOptimize(hybrid_jacobian(q, s, g).matrix());
}
BENCHMARK(BM_HybridJacobian)->DenseRange(0, 3);

static void BM_WheelPseudoinverse(benchmark::State& state) {
  const GeometryParams g;
  const AgentConfig q{0, 0, 0, 40, -80};
  const ConfigMatrix V = config_matrix(q, {}, g);
  const Eigen::Vector4d omega = V * VelocityInput{0, 0, 0.05, 0.01, 0.2}.vector();
  for (auto _ : state) benchmark::DoNotOptimize(body_twist_from_wheels(omega, V));
}
BENCHMARK(BM_WheelPseudoinverse);

static void BM_SpiralRefit(benchmark::State& state) {
  const GeometryParams g;
  const auto mode = static_cast<SpiralMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(refit_oracle(mode, g));
}
BENCHMARK(BM_SpiralRefit)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
