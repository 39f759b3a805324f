// OpenMP kernels against their serial references on synthetic graphs.

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "cminer/clusterer.hpp"
#include "cminer/metrics.hpp"
#include "cminer/serial_reference.hpp"

namespace {

using namespace cminer;

// Layered call graph: ~`degree` random callees per element, weights 1..20.
DependencyGraph synthetic(std::size_t n, std::size_t degree, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<Weight> weight(1, 20);
  GraphBuilder b;
  std::vector<ElementId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.emplace_back("pkg" + std::to_string(i % 8) + ".C" + std::to_string(i));
    b.add_element({ids.back(), "T" + std::to_string(i % 8), {}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < degree; ++k) {
      const std::size_t j = pick(rng);
      if (j != i) b.add_edge(ids[i], ids[j], weight(rng));
    }
  }
  return std::move(b).build();
}

Component everything(const DependencyGraph& g, std::size_t limit) {
  Component c{"ALL", {}};
  for (const auto& e : g.elements()) {
    if (c.members.size() == limit) break;
    c.members.push_back(e.id);
  }
  return c;
}

void BM_ComputeDsParallel(benchmark::State& state) {
  const auto g = synthetic(state.range(0), 6);
  for (auto _ : state) benchmark::DoNotOptimize(compute_ds(g, DSStrategy::jaccard));
}

void BM_ComputeDsSerial(benchmark::State& state) {
  const auto g = synthetic(state.range(0), 6);
  for (auto _ : state) benchmark::DoNotOptimize(serial::compute_ds(g, DSStrategy::jaccard));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto m = compute_ds(synthetic(state.range(0), 3));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(m));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto m = compute_ds(synthetic(state.range(0), 3));
  for (auto _ : state) benchmark::DoNotOptimize(serial::sweep(m));
}

void BM_SplitParallel(benchmark::State& state) {
  const auto g = synthetic(state.range(0), 4);
  const auto c = everything(g, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(split_component(c, g));
}

void BM_SplitSerial(benchmark::State& state) {
  const auto g = synthetic(state.range(0), 4);
  const auto c = everything(g, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::split_exhaustive(c, g));
}

BENCHMARK(BM_ComputeDsParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeDsSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitParallel)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitSerial)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
