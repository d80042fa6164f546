#include <benchmark/benchmark.h>

#include "mlconn/closed_form.hpp"
#include "mlconn/generators.hpp"
#include "mlconn/spectra.hpp"
#include "mlconn/weight_opt.hpp"

namespace {

using namespace mlconn;

MultilayerNetwork instance(int n, int m) {
  const LayerGraph g1 = first_connected([n](std::uint64_t s) { return random_geometric(n, 0.35, s); }, 1);
  const LayerGraph g2 = first_connected([m](std::uint64_t s) { return random_geometric(m, 0.45, s); }, 100);
  return MultilayerNetwork(g1, g2, InterlayerPattern::all_pairs(n, m));
}

void BM_Eigensolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MultilayerNetwork net = instance(n, n / 2);
  const Eigen::MatrixXd l = build_supra_laplacian(net, uniform_assignment(net.pattern(), 5.0)).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(fiedler(l).lambda2);
}
BENCHMARK(BM_Eigensolve)->Arg(20)->Arg(40)->Arg(80);

void BM_MaximizeLambda2(benchmark::State& state) {
  const MultilayerNetwork net = instance(12, 6);
  const double c = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_lambda2(net, c).lambda2_star);
}
BENCHMARK(BM_MaximizeLambda2)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Thresholds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(thresholds_allpairs(0.6798, 0.0712, 30, 15).c_star);
}
BENCHMARK(BM_Thresholds);

}  // namespace

BENCHMARK_MAIN();
