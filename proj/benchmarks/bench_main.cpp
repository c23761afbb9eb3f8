#include "cosparse/bounds.hpp"
#include "cosparse/priors.hpp"
#include "cosparse/sdim.hpp"
#include "cosparse/solver.hpp"
#include "cosparse/weights.hpp"

#include <benchmark/benchmark.h>

using namespace cosparse;

namespace {

struct Instance {
  AnalysisOperator op;
  Prior prior;
};

Instance replication_instance(Index p, Index n) {
  Rng rng(2024);
  auto op = gen_random_frame(p, n, 0.5, 1.5, rng);
  Vector beta(p);
  for (Index k = 0; k < p; ++k) beta(k) = k < p / 4 ? 0.9 : 0.1;
  return {op, make_prior(beta, Vector::Zero(p))};
}

void BM_ExpectedBound(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto inst = replication_instance(n + n / 8, n);
  const auto v = heuristic_weights(inst.prior);
  for (auto _ : state) benchmark::DoNotOptimize(expected_bound(inst.op, inst.prior, v).value);
}
BENCHMARK(BM_ExpectedBound)->Arg(30)->Arg(60)->Arg(120);

void BM_DesignWeights(benchmark::State& state) {
  const auto inst = replication_instance(34, 30);
  for (auto _ : state) benchmark::DoNotOptimize(design_weights(inst.op, inst.prior).sweeps);
}
BENCHMARK(BM_DesignWeights)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const auto m = static_cast<Index>(state.range(0));
  const auto inst = replication_instance(34, 30);
  Rng rng(1);
  const Vector x = sample_signal(inst.op, sample_support(inst.prior, inst.op, rng), rng);
  const Matrix a = gaussian_measurements(30, m, rng);
  const Vector y = a * x;
  const AnalysisL1Solver solver(inst.op, a);
  const auto v = constant_weights(34);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(v, y).iterations);
}
BENCHMARK(BM_Solve)->Arg(12)->Arg(18)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_SolverSetup(benchmark::State& state) {
  const auto inst = replication_instance(34, 30);
  Rng rng(2);
  const Matrix a = gaussian_measurements(30, 18, rng);
  for (auto _ : state) {
    AnalysisL1Solver solver(inst.op, a);
    benchmark::DoNotOptimize(solver.full_row_rank());
  }
}
BENCHMARK(BM_SolverSetup)->Unit(benchmark::kMicrosecond);

void BM_ConeProjection(benchmark::State& state) {
  const auto inst = replication_instance(34, 30);
  Rng rng(3);
  const Vector x = sample_signal(inst.op, sample_support(inst.prior, inst.op, rng), rng);
  const ConeProjector proj(inst.op, constant_weights(34), x);
  std::size_t iterations = 0, calls = 0;
  for (auto _ : state) {
    const auto r = proj.distance_sq(gaussian_vector(rng, 30));
    iterations += r.iterations;
    ++calls;
    benchmark::DoNotOptimize(r.distance_sq);
  }
  state.counters["iters/proj"] = static_cast<double>(iterations) / static_cast<double>(calls);
}
BENCHMARK(BM_ConeProjection)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
