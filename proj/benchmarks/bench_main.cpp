#include <rolextract/extract.hpp>
#include <rolextract/generators.hpp>
#include <rolextract/lowrank.hpp>
#include <rolextract/rng.hpp>
#include <rolextract/similarity.hpp>
#include <rolextract/spectra.hpp>

#include <benchmark/benchmark.h>

#include <numeric>

using namespace rolextract;

namespace {

// Block cycle with four equal roles of n/4 nodes, shuffled and lightly perturbed.
Adjacency noisy_cycle(int n, double p) {
  const std::vector<int> sizes(4, n / 4);
  const GroundTruth g = generate_structure(StructureKind::BlockCycle, {sizes, random_permutation(n, 7), {}});
  return perturb(g.adjacency, {p, p, 11});
}

void BM_Gamma(benchmark::State& state) {
  const Adjacency a = noisy_cycle(static_cast<int>(state.range(0)), 0.05);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(a.size(), a.size());
  for (auto _ : state) benchmark::DoNotOptimize(gamma(a, x));
}
BENCHMARK(BM_Gamma)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DenseIterate(benchmark::State& state) {
  const Adjacency a = noisy_cycle(static_cast<int>(state.range(0)), 0.0);
  const double beta2 = default_beta2(a);
  for (auto _ : state) benchmark::DoNotOptimize(iterate(a, beta2, 6));
}
BENCHMARK(BM_DenseIterate)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_LowRankIterateIdeal(benchmark::State& state) {
  const Adjacency a = noisy_cycle(static_cast<int>(state.range(0)), 0.0);
  const double beta2 = default_beta2(a);
  for (auto _ : state) benchmark::DoNotOptimize(lowrank_iterate(a, beta2, 6));
}
BENCHMARK(BM_LowRankIterateIdeal)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LowRankIterateNoisy(benchmark::State& state) {
  const Adjacency a = noisy_cycle(static_cast<int>(state.range(0)), 0.05);
  const double beta2 = default_beta2(a);
  for (auto _ : state) benchmark::DoNotOptimize(lowrank_iterate(a, beta2, 6));
}
BENCHMARK(BM_LowRankIterateNoisy)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_BetaBound(benchmark::State& state) {
  const Adjacency a = noisy_cycle(static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(beta_bound(a));
}
BENCHMARK(BM_BetaBound)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExtractRoles(benchmark::State& state) {
  const Adjacency a = noisy_cycle(static_cast<int>(state.range(0)), state.range(1) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(extract_roles(a));
}
BENCHMARK(BM_ExtractRoles)->Args({200, 0})->Args({200, 10})->Args({800, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
