// Micro benchmarks for the O(K n^2) kernels and one iteration of each solver.
//
//   ./qpgc_bench --benchmark_filter=DV

#include <benchmark/benchmark.h>

#include "qpgc/distance.hpp"
#include "qpgc/model.hpp"
#include "qpgc/qp_newton.hpp"
#include "qpgc/qpr_spg.hpp"
#include "qpgc/solve_result.hpp"
#include "qpgc/synth.hpp"

namespace {

using namespace qpgc;

constexpr int kClusters = 5;

SyntheticGraph instance(int n) { return generate_ppm(kClusters, n / kClusters, 0.9, 0.1, 7); }

void BM_Jaccard(benchmark::State& state) {
  const auto sg = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jaccard(sg.graph));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Jaccard)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity(benchmark::oNSquared);

void BM_DV(benchmark::State& state) {
  const auto sg = instance(static_cast<int>(state.range(0)));
  const DistanceOperator op(jaccard(sg.graph), {KernelBackend::kDense, 1});
  const AssignmentVector v = random_start(op.size(), kClusters, 1, 0);
  AssignmentVector out(op.size(), kClusters);
  for (auto _ : state) {
    op.apply(v, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DV)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000)->Complexity(benchmark::oNSquared);

void BM_DVSparse(benchmark::State& state) {
  // SBM-like density: most pairs share no neighbor and sit at the max distance.
  const int n = static_cast<int>(state.range(0));
  const auto sg = generate_ppm(n / 50, 50, 0.9, 0.002, 7);
  const DistanceOperator op(jaccard(sg.graph), {KernelBackend::kSparseComplement, 1});
  const AssignmentVector v = random_start(op.size(), kClusters, 1, 0);
  AssignmentVector out(op.size(), kClusters);
  for (auto _ : state) {
    op.apply(v, out);
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(BM_DVSparse)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000);

void BM_SpgIteration(benchmark::State& state) {
  const auto sg = instance(static_cast<int>(state.range(0)));
  const DistanceOperator op(jaccard(sg.graph), {KernelBackend::kDense, 1});
  const QuadraticModel model(op, kClusters);
  QprGcConfig cfg = QprGcConfig::ppm();
  cfg.max_inner = 1;
  const PenaltyParams p{cfg.theta_fixed, cfg.lambda0, cfg.box_upper};
  const AssignmentVector x0 = random_start(op.size(), kClusters, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(spg(model, p, x0, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpgIteration)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity(benchmark::oNSquared);

void BM_NewtonIteration(benchmark::State& state) {
  const auto sg = instance(static_cast<int>(state.range(0)));
  const DistanceOperator op(jaccard(sg.graph), {KernelBackend::kDense, 1});
  const QuadraticModel model(op, kClusters);
  const QpGcConfig cfg = QpGcConfig::ppm();
  const PenaltyParams p{cfg.theta0, 0.0, cfg.box_upper};
  const AssignmentVector x0 = random_start(op.size(), kClusters, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(projected_newton(model, p, x0, cfg.subproblem_eps, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NewtonIteration)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Complexity(benchmark::oNSquared);

}  // namespace
BENCHMARK_MAIN();
