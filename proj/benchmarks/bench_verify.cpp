#include <benchmark/benchmark.h>

#include "fibmult/cartesian.hpp"
#include "fibmult/examples.hpp"

using namespace fibmult;

static void BM_VerifyAxiomsRing(benchmark::State& state) {
  auto e = gen_example("ring", {}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_axioms(*e.fm));
  state.counters["squares"] = static_cast<double>(e.fm->special_squares().size());
}
BENCHMARK(BM_VerifyAxiomsRing)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BuildRing(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_example("ring", {}, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BuildRing)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Extensivity(benchmark::State& state) {
  auto e = gen_example("ring", {}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_extensivity(*e.fm));
}
BENCHMARK(BM_Extensivity)->Unit(benchmark::kMillisecond);

static void BM_CartesianCheck(benchmark::State& state) {
  auto e = gen_example("ring", {}, 3);
  auto cs = cartesian_structure(*e.standard);
  for (auto _ : state) benchmark::DoNotOptimize(verify_cartesian_structure(cs));
}
BENCHMARK(BM_CartesianCheck)->Unit(benchmark::kMillisecond);

static void BM_ProductsReport(benchmark::State& state) {
  auto e = gen_example("ring", {}, 3);
  auto cs = cartesian_structure(*e.standard);
  for (auto _ : state) benchmark::DoNotOptimize(products_equivalence_report(cs, 3));
}
BENCHMARK(BM_ProductsReport)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
