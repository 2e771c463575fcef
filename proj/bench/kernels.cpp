// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "selectboost/boost.hpp"
#include "selectboost/grouping.hpp"
#include "selectboost/selectors.hpp"
#include "selectboost/simulate.hpp"

using namespace selectboost;

namespace {

GroundTruthDataset dataset(int n, int p) {
  SimulationConfig sim;
  sim.N = n;
  sim.P = p;
  sim.q = 10;
  sim.n_clusters = 5;
  sim.seed = 11;
  return generate_cluster_data(sim, 0);
}

void BM_correlation(benchmark::State& state, bool serial) {
  const auto data = dataset(100, static_cast<int>(state.range(0)));
  const Eigen::MatrixXd x = standardize(data.X).values;
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial ? correlation_matrix_serial(x) : correlation_matrix(x));
  }
}

void BM_boost(benchmark::State& state, bool serial) {
  const auto data = dataset(50, 100);
  const StandardizedDesign design = standardize(data.X);
  const GroupMap groups = correlation_groups(design, 0.8);
  const SelectionMethod lasso = make_lasso_selector(Family::Linear, CvConfig{});
  const int B = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto fv = serial ? boost_serial(design.values, data.y_continuous, lasso, groups, B, 5)
                     : boost(design.values, data.y_continuous, lasso, groups, B, 5);
    benchmark::DoNotOptimize(fv);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_correlation, serial, true)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_correlation, openmp, false)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_boost, serial, true)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_boost, openmp, false)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
