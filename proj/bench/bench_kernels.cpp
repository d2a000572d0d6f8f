// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "ratioavg/haar.hpp"
#include "ratioavg/points.hpp"
#include "ratioavg/quad.hpp"

using namespace ratioavg;

namespace {

std::vector<TorusPoint> batch_points(int count) {
    std::mt19937_64 rng(3);
    std::vector<TorusPoint> pts;
    for (int i = 0; i < count; ++i) pts.push_back(random_torus_point(rng, 2, 2, PointRanges{0.1, 0.35, 0.05, 0.35}));
    return pts;
}

void BM_mc_serial(benchmark::State& state) {
    const auto pts = batch_points(static_cast<int>(state.range(1)));
    const GroupSpec g{Family::SO, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(mc_estimate_batch_serial(g, pts, 20000, 1));
}

void BM_mc_openmp(benchmark::State& state) {
    const auto pts = batch_points(static_cast<int>(state.range(1)));
    const GroupSpec g{Family::SO, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(mc_estimate_batch(g, pts, 20000, 1, 0));
}

void BM_quad_serial(benchmark::State& state) {
    const TorusPoint pt = batch_points(1).front();
    const QuadSpec spec{Family::USp, 4, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(quad_average_serial(spec, pt));
}

void BM_quad_openmp(benchmark::State& state) {
    const TorusPoint pt = batch_points(1).front();
    const QuadSpec spec{Family::USp, 4, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(quad_average(spec, pt));
}

}  // namespace

BENCHMARK(BM_mc_serial)->Args({3, 1})->Args({5, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_openmp)->Args({3, 1})->Args({5, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quad_serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quad_openmp)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
