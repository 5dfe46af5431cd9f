#include <benchmark/benchmark.h>

#include "lipgraph/cantor4.hpp"
#include "lipgraph/favard.hpp"
#include "lipgraph/ifs.hpp"
#include "lipgraph/subifs.hpp"

using namespace lipgraph;

static void BM_Generation(benchmark::State& state) {
  const Ifs c4 = Ifs::cantor4();
  const ConvexPolygon unit = ConvexPolygon::square({0, 0}, 1.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generation(c4, unit, n));
}
BENCHMARK(BM_Generation)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_FavardCantor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto polys = generation(Ifs::cantor4(), ConvexPolygon::square({0, 0}, 1.0), n).polygons();
  const AngleGrid grid(1024);
  for (auto _ : state) benchmark::DoNotOptimize(favard_length(polys, grid));
}
BENCHMARK(BM_FavardCantor)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

static void BM_ExtractSubIfs(benchmark::State& state) {
  const Ifs c4 = Ifs::cantor4();
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extract_separated_subifs(c4, m));
}
BENCHMARK(BM_ExtractSubIfs)->DenseRange(1, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_AdhocGraph(benchmark::State& state) {
  const C4Family fam = adhoc_family(static_cast<int>(state.range(0)));
  const auto levels = family_levels(fam, 3);
  const Frame frame(fam.theta);
  for (auto _ : state) {
    const GraphHypotheses h = verify_hypotheses(levels, frame);
    benchmark::DoNotOptimize(build_graph(levels, frame, h));
  }
}
BENCHMARK(BM_AdhocGraph)->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
