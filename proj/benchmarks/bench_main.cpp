#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nisbound/bounds.hpp"
#include "nisbound/distance.hpp"
#include "nisbound/fourier.hpp"
#include "nisbound/hypercube.hpp"
#include "nisbound/oracle.hpp"

using namespace nisbound;

namespace {

BinaryCode random_code(int n, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Word> pick(0, dim_mask(n));
  std::vector<Word> words;
  while (words.size() < size) words.push_back(pick(rng));
  return make_code(n, std::move(words));
}

void BM_WalshHadamard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> v(std::size_t{1} << n);
  std::mt19937_64 rng(1);
  for (double& x : v) x = (rng() & 1) ? 1.0 : -1.0;
  for (auto _ : state) {
    walsh_hadamard(std::span<double>(v));
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_WalshHadamard)->DenseRange(8, 20, 4);

// Distance counts: the quadratic pair loop against the transform route.
void BM_DistancePairwise(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryCode a = random_code(n, std::size_t{1} << (n - 2), 1);
  const BinaryCode b = random_code(n, std::size_t{1} << (n - 2), 2);
  for (auto _ : state) benchmark::DoNotOptimize(distance_counts_pairwise(a, b));
}
BENCHMARK(BM_DistancePairwise)->DenseRange(6, 14, 2);

void BM_DistanceTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryCode a = random_code(n, std::size_t{1} << (n - 2), 1);
  const BinaryCode b = random_code(n, std::size_t{1} << (n - 2), 2);
  for (auto _ : state) benchmark::DoNotOptimize(distance_counts_transform(a, b));
}
BENCHMARK(BM_DistanceTransform)->DenseRange(6, 14, 2);

void BM_HcBounds(benchmark::State& state) {
  const double a = 0.01 * static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hc_bounds(a, a, 0.5));
}
BENCHMARK(BM_HcBounds)->Arg(5)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_CombinedReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(combined_report(0.2, 0.35, 0.6));
}
BENCHMARK(BM_CombinedReport)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveOracle(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_extremes(4, m, m, 0.5, Objective::Collision));
  }
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LocalSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::uint64_t m = std::uint64_t{1} << (n - 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_search(n, m, m, 0.5, Direction::Max, 1, 200));
  }
}
BENCHMARK(BM_LocalSearch)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
