#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lipgraph/favard.hpp"
#include "lipgraph/geometry.hpp"
#include "lipgraph/ifs.hpp"

using namespace lipgraph;

static void BM_ProjectionLength(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto polys = generation(Ifs::cantor4(), ConvexPolygon::square({0, 0}, 1.0), n).polygons();
  const Angle theta(0.4636);
  for (auto _ : state) benchmark::DoNotOptimize(projection_length(polys, theta));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(polys.size()));
}
BENCHMARK(BM_ProjectionLength)->DenseRange(3, 7, 2);

static void BM_MinWidth(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts(static_cast<std::size_t>(state.range(0)));
  for (Point& p : pts) p = {u(rng), u(rng)};
  const ConvexPolygon hull = ConvexPolygon::hull(pts);
  for (auto _ : state) benchmark::DoNotOptimize(min_width(hull));
}
BENCHMARK(BM_MinWidth)->Arg(64)->Arg(4096);

static void BM_VitaliSelect(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double delta = 1e-4;
  std::vector<Interval> iv(static_cast<std::size_t>(state.range(0)));
  for (Interval& i : iv) {
    const double lo = u(rng);
    i = {lo, lo + delta * (1.0 + 4.0 * u(rng))};
  }
  for (auto _ : state) benchmark::DoNotOptimize(vitali_select(iv, delta, delta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VitaliSelect)->Arg(1 << 10)->Arg(1 << 16);
