// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <memory>

#include "coxtile/ball.hpp"
#include "coxtile/coloring.hpp"
#include "coxtile/hyperbolic.hpp"
#include "coxtile/walls.hpp"

using namespace coxtile;

namespace {

const Ball& pentagon(int radius) {
    static std::map<int, Ball> cache;
    auto it = cache.find(radius);
    if (it == cache.end())
        it = cache.emplace(radius, enumerate_ball(std::make_shared<CoxeterGroup>(right_angled_polygon_system(5)), radius))
                 .first;
    return it->second;
}

const Ball& hexagon(int radius) {
    static std::map<int, Ball> cache;
    auto it = cache.find(radius);
    if (it == cache.end())
        it = cache.emplace(radius, enumerate_ball(std::make_shared<CoxeterGroup>(right_angled_polygon_system(6)), radius))
                 .first;
    return it->second;
}

void BM_ball(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(1));
    const int saved = omp_get_max_threads();
    omp_set_num_threads(threads == 0 ? saved : threads);
    const auto group = std::make_shared<CoxeterGroup>(right_angled_polygon_system(5));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball(group, static_cast<int>(state.range(0))).size());
    omp_set_num_threads(saved);
}
BENCHMARK(BM_ball)->Args({8, 1})->Args({8, 0})->Unit(benchmark::kMillisecond);

void BM_walls_serial(benchmark::State& state) {
    const Ball& b = hexagon(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_walls_serial(b).size());
}
void BM_walls(benchmark::State& state) {
    const Ball& b = hexagon(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_walls(b).size());
}
BENCHMARK(BM_walls_serial)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_walls)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_aperiodicity_serial(benchmark::State& state) {
    const Ball& b = pentagon(9);
    const Coloring c = norm_coloring(b);
    for (auto _ : state) benchmark::DoNotOptimize(aperiodicity_report_serial(b, c, 2, 3, 4).pairs.size());
}
void BM_aperiodicity(benchmark::State& state) {
    const Ball& b = pentagon(9);
    const Coloring c = norm_coloring(b);
    for (auto _ : state) benchmark::DoNotOptimize(aperiodicity_report(b, c, 2, 3, 4).pairs.size());
}
BENCHMARK(BM_aperiodicity_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_aperiodicity)->Unit(benchmark::kMillisecond);

void BM_claim_serial(benchmark::State& state) {
    const Ball& b = pentagon(8);
    const Coloring c = norm_coloring(b);
    for (auto _ : state) benchmark::DoNotOptimize(radial_claim_scan_serial(b, c, 2, 6, 5).hypotheses_satisfied);
}
void BM_claim(benchmark::State& state) {
    const Ball& b = pentagon(8);
    const Coloring c = norm_coloring(b);
    for (auto _ : state) benchmark::DoNotOptimize(radial_claim_scan(b, c, 2, 6, 5).hypotheses_satisfied);
}
BENCHMARK(BM_claim_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_claim)->Unit(benchmark::kMillisecond);

void BM_place_serial(benchmark::State& state) {
    const Ball& b = hexagon(6);
    const HPolygon p = build_polygon(3);
    const auto r = reflection_matrices(p);
    for (auto _ : state) benchmark::DoNotOptimize(place_tiles_serial(b, p, r).max_drift);
}
void BM_place(benchmark::State& state) {
    const Ball& b = hexagon(6);
    const HPolygon p = build_polygon(3);
    const auto r = reflection_matrices(p);
    for (auto _ : state) benchmark::DoNotOptimize(place_tiles(b, p, r).max_drift);
}
BENCHMARK(BM_place_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_place)->Unit(benchmark::kMillisecond);

void BM_displacement_serial(benchmark::State& state) {
    const Ball& b = pentagon(7);
    const Word a{0, 2};
    for (auto _ : state) benchmark::DoNotOptimize(displacement_exponent_serial(b, a, 6).failures.size());
}
void BM_displacement(benchmark::State& state) {
    const Ball& b = pentagon(7);
    const Word a{0, 2};
    for (auto _ : state) benchmark::DoNotOptimize(displacement_exponent(b, a, 6).failures.size());
}
BENCHMARK(BM_displacement_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_displacement)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
