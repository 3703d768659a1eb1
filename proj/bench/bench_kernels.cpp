#include <benchmark/benchmark.h>

#include <random>

#include "levelgraph/calabi_dhym.hpp"
#include "levelgraph/kempf_ness.hpp"
#include "levelgraph/regions.hpp"

namespace {

using namespace lg;

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_Flow(benchmark::State& state) {
  const ComplexPolynomial w{0.0, 0.0, 0.0, 1.0 / 3.0};
  const auto grid = make_grid(1.0, 2.0, static_cast<int>(state.range(1)));
  const auto f0 = sample_function(grid, 0.0, 0.0, [](double x) { return 0.3 * (x - 1.0) * (2.0 - x); });
  const auto sigma = default_sigma(*grid);
  FlowOptions opt;
  opt.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_flow(f0, w, sigma, opt).steps);
}

void BM_Regions(benchmark::State& state) {
  const ComplexPolynomial w = from_roots({{-1.0, 0.5}, {-0.5, -1.0}, {-2.0, 0.0}, {-0.3, 2.0}, {-1.5, -1.5}}).antiderivative();
  const Rect r{0.05, 3.0, -3.0, 3.0, static_cast<int>(state.range(1)), static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(sample_regions(w, r, {}, mode(state)).labels.size());
}

void BM_DhymSweep(benchmark::State& state) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> pos(0.1, 3.0), any(-3.0, 3.0);
  std::uniform_int_distribution<int> mm(1, 3), rr(0, 3);
  std::vector<CalabiInput> in;
  for (int i = 0; i < state.range(1); ++i) in.push_back({mm(g), rr(g), pos(g), any(g), pos(g), any(g)});
  for (auto _ : state) benchmark::DoNotOptimize(analyze_many(in, {}, mode(state)).size());
}

}  // namespace

BENCHMARK(BM_Flow)->ArgsProduct({{0, 1}, {65, 257}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Regions)->ArgsProduct({{0, 1}, {32, 96}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DhymSweep)->ArgsProduct({{0, 1}, {200}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
