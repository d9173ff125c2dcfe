#include <benchmark/benchmark.h>

#include <memory>

#include "alcove/category_analysis.hpp"

using namespace alcove;

namespace {

struct Case {
  const char* type;
  int level;
};

constexpr Case kCases[] = {{"A2", 6}, {"B2", 5}, {"G2", 5}, {"A3", 4}, {"C3", 3}};

std::unique_ptr<AlcoveContext> context(const Case& c) {
  return std::make_unique<AlcoveContext>(std::make_shared<const RootSystem>(LieType::parse(c.type)), c.level);
}

void fusion_table(benchmark::State& state, Execution exec) {
  const Case& c = kCases[state.range(0)];
  state.SetLabel(std::string(c.type) + " k=" + std::to_string(c.level));
  for (auto _ : state) {
    // Fresh context so cached weight diagrams do not leak between iterations.
    auto ctx = context(c);
    benchmark::DoNotOptimize(build_fusion_table(*ctx, exec));
  }
}

void smatrix(benchmark::State& state, Execution exec) {
  const Case& c = kCases[state.range(0)];
  state.SetLabel(std::string(c.type) + " k=" + std::to_string(c.level));
  auto ctx = context(c);
  const auto table = build_fusion_table(*ctx);
  for (auto _ : state) {
    ModularData md(*ctx);
    benchmark::DoNotOptimize(md.smatrix(table, exec));
  }
}

void degeneracy(benchmark::State& state, Execution exec) {
  const Case& c = kCases[state.range(0)];
  state.SetLabel(std::string(c.type) + " k=" + std::to_string(c.level));
  auto ctx = context(c);
  const auto full = gamma_subset(*ctx, ctx->center().select("Z1"));
  for (auto _ : state) {
    ModularData md(*ctx);
    benchmark::DoNotOptimize(degeneracy_report(full, md, exec));
  }
}

}  // namespace

BENCHMARK_CAPTURE(fusion_table, serial, Execution::Serial)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(fusion_table, parallel, Execution::Parallel)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(smatrix, serial, Execution::Serial)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(smatrix, parallel, Execution::Parallel)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(degeneracy, serial, Execution::Serial)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(degeneracy, parallel, Execution::Parallel)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
