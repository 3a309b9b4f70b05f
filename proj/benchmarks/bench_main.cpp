#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "alexgeo/flow.hpp"
#include "alexgeo/quasigeodesic.hpp"
#include "alexgeo/spaces.hpp"
#include "alexgeo/tangent.hpp"
#include "alexgeo/tight.hpp"

using namespace alexgeo;

static void BM_ConeDistance(benchmark::State& state) {
  auto C = make_cone(3 * kPi / 2);
  std::mt19937_64 rng(1);
  std::vector<Point> pts;
  for (int i = 0; i < 256; ++i) pts.push_back(C->random_point(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(C->distance(pts[i % 256], pts[(i + 7) % 256]));
    ++i;
  }
}
BENCHMARK(BM_ConeDistance);

static void BM_MeshDistance(benchmark::State& state) {
  auto T = make_regular_tetrahedron(1.0);
  std::mt19937_64 rng(2);
  std::vector<Point> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(T->random_point(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(T->distance(pts[i % 64], pts[(i + 5) % 64]));
    ++i;
  }
}
BENCHMARK(BM_MeshDistance);

static void BM_Gradient(benchmark::State& state) {
  auto C = make_cone(3 * kPi / 2);
  const ExprPtr f = sum({dist(PolarPoint{1, 0}), dist(PolarPoint{1.5, 2})});
  const Point p = PolarPoint{0.7, 1};
  for (auto _ : state) benchmark::DoNotOptimize(gradient(f, *C, p).norm);
}
BENCHMARK(BM_Gradient);

static void BM_GradientCurve(benchmark::State& state) {
  auto S = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const ExprPtr f = scaled(-0.5, dist_sq(PlanarPoint{0.5, 0.5}));
  for (auto _ : state) benchmark::DoNotOptimize(gradient_curve(f, S, PlanarPoint{0.1, 0.2}, 1.0).samples.size());
}
BENCHMARK(BM_GradientCurve)->Unit(benchmark::kMillisecond);

static void BM_TraceTetrahedron(benchmark::State& state) {
  auto T = make_regular_tetrahedron(1.0);
  std::mt19937_64 rng(3);
  const Point p = T->random_point(rng);
  for (auto _ : state) benchmark::DoNotOptimize(trace_quasigeodesic(T, p, 1.1, 10).samples.size());
}
BENCHMARK(BM_TraceTetrahedron)->Unit(benchmark::kMillisecond);

static void BM_TightCheck(benchmark::State& state) {
  auto P = make_plane();
  const std::vector<ExprPtr> fs{dist(PolarPoint{1, 0}), dist(PolarPoint{1, 2 * kPi / 3})};
  TightOptions o;
  o.n_samples = 20;
  for (auto _ : state) benchmark::DoNotOptimize(tight_check(P, fs, Region{PolarPoint{0, 0}, 0.1}, o).sup);
}
BENCHMARK(BM_TightCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
