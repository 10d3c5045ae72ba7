#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "bioperf/path_matrix.hpp"
#include "bioperf/perf_estimators.hpp"
#include "bioperf/phylo_nj.hpp"

namespace {

using namespace bioperf;

// Random metric from points on a line plus noise; good enough to exercise NJ.
DistanceMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("N" + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) d[i][j] = d[j][i] = std::abs(x[i] - x[j]) + 1.0;
  }
  return DistanceMatrix(labels, d);
}

void BM_NjBuild(benchmark::State& state) {
  const auto d = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(nj_build(d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NjBuild)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_AllPairsIncidence(benchmark::State& state) {
  const PhyloTree t = nj_build(random_matrix(static_cast<std::size_t>(state.range(0)), 2));
  const auto pairs = all_leaf_pairs(t);
  for (auto _ : state) benchmark::DoNotOptimize(build_incidence(t, pairs));
}
BENCHMARK(BM_AllPairsIncidence)->RangeMultiplier(2)->Range(8, 64);

void BM_Estimators(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 1000.0);
  std::vector<DerivedRates> runs(static_cast<std::size_t>(state.range(0)));
  for (auto& r : runs) {
    r.capacity_c = u(rng);
    r.byte_rate_bs = r.capacity_c / 2;
    r.service_rate = u(rng);
    r.arrival_rate = r.service_rate / 2;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare(bio_utilization(runs), littles_from_runs(runs)));
  }
}
BENCHMARK(BM_Estimators)->Range(3, 4096);

}  // namespace

BENCHMARK_MAIN();
