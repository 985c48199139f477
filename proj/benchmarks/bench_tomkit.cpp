#include <benchmark/benchmark.h>

#include <random>

#include "tomkit/crypto.hpp"
#include "tomkit/enumerate.hpp"
#include "tomkit/treelink.hpp"

using namespace tomkit;

namespace {

EnumerationTask task_of(EnumKind kind, int n, int d) {
  EnumerationTask task;
  task.kind = kind;
  task.n = n;
  task.d = d;
  return task;
}

std::vector<FineMixedSubdivision> subdivisions(int n, int d) {
  std::vector<FineMixedSubdivision> out;
  for (const auto& obj : enumerate_all(task_of(EnumKind::fms, n, d)))
    out.push_back(std::get<FineMixedSubdivision>(obj));
  return out;
}

void BM_CountFms(benchmark::State& state) {
  auto task = task_of(EnumKind::fms, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(count(task).count);
}
BENCHMARK(BM_CountFms)->Args({3, 3})->Args({2, 5})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_CountTrianguloids(benchmark::State& state) {
  auto task = task_of(EnumKind::trianguloid, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(count(task).count);
}
BENCHMARK(BM_CountTrianguloids)->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_Compatibility(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), d = static_cast<int>(state.range(1));
  auto trees = spanning_trees(n, d);
  std::mt19937_64 rng(1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs(4096);
  for (auto& p : pairs) p = {rng() % trees.size(), rng() % trees.size()};
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[k++ % pairs.size()];
    benchmark::DoNotOptimize(are_compatible(trees[a], trees[b]));
  }
}
BENCHMARK(BM_Compatibility)->Args({3, 3})->Args({4, 4})->Args({5, 5});

void BM_ValidateFms(benchmark::State& state) {
  auto all = subdivisions(3, 4);
  auto mode = static_cast<FmsMode>(state.range(0));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(validate_fms(all[k++ % all.size()], mode).verdict());
}
BENCHMARK(BM_ValidateFms)
    ->Arg(static_cast<int>(FmsMode::full))
    ->Arg(static_cast<int>(FmsMode::linkage_only))
    ->Arg(static_cast<int>(FmsMode::compat_only));

void BM_RoundTrip(benchmark::State& state) {
  auto all = subdivisions(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_audit(all[k++ % all.size()]).verdict());
}
BENCHMARK(BM_RoundTrip)->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMicrosecond);

void BM_TreeLinkageCovectors(benchmark::State& state) {
  auto all = subdivisions(3, 4);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(all_covectors(all[k++ % all.size()]).size());
}
BENCHMARK(BM_TreeLinkageCovectors)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
