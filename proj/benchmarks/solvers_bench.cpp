#include <benchmark/benchmark.h>

#include <random>

#include "koptlab/favaron.hpp"
#include "koptlab/harness.hpp"
#include "koptlab/kernel_decomp.hpp"
#include "koptlab/saturation.hpp"
#include "koptlab/sources.hpp"
#include "koptlab/tuza.hpp"

using namespace koptlab;

namespace {

Graph gnp(int n, double p, std::uint64_t seed) {
    GraphStream s(GraphSource::random(n, p, seed, 1));
    return *s.next();
}

}  // namespace

static void BM_KOptimalExhaustive(benchmark::State& state) {
    const auto g = gnp(static_cast<int>(state.range(0)), 0.4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(k_optimal_exhaustive(g, 2));
}
BENCHMARK(BM_KOptimalExhaustive)->DenseRange(8, 16, 4);

static void BM_KOptimalLocal(benchmark::State& state) {
    const auto g = gnp(static_cast<int>(state.range(0)), 0.3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(k_optimal_local(g, 2));
}
BENCHMARK(BM_KOptimalLocal)->RangeMultiplier(2)->Range(8, 64);

static void BM_GeneralizedLebensold(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto g = gnp(n, 0.3, 3);
    VertexSet d(n);
    for (Vertex v = 0; v < n; v += 2) d.insert(v);
    const BipartiteSplit split(g, d);
    const auto profile = DemandProfile::uniform(2, n);
    for (auto _ : state) benchmark::DoNotOptimize(check_generalized_lebensold(split, profile));
}
BENCHMARK(BM_GeneralizedLebensold)->RangeMultiplier(2)->Range(16, 256);

static void BM_TuzaJoin(benchmark::State& state) {
    const auto h = random_triangle_free(static_cast<int>(state.range(0)), 0.5, 4);
    for (auto _ : state) benchmark::DoNotOptimize(verify_tuza_connection(h, 2));
}
BENCHMARK(BM_TuzaJoin)->DenseRange(5, 8, 1);

static void BM_VizingColor(benchmark::State& state) {
    const auto g = gnp(static_cast<int>(state.range(0)), 0.2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(vizing_color(g));
}
BENCHMARK(BM_VizingColor)->RangeMultiplier(2)->Range(16, 256);

static void BM_ChordalPipeline(benchmark::State& state) {
    const auto g = random_chordal(static_cast<int>(state.range(0)), 6);
    const auto d = k_optimal_exhaustive(g, 2).d;
    for (auto _ : state) benchmark::DoNotOptimize(satur_pipeline_chordal(g, 2, d));
}
BENCHMARK(BM_ChordalPipeline)->DenseRange(8, 16, 4);

static void BM_SearchGoodDecomposition(benchmark::State& state) {
    const auto all = connected_graphs_with_edges(static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (const auto& g : all) benchmark::DoNotOptimize(search_good_decomposition(g));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * all.size()));
}
BENCHMARK(BM_SearchGoodDecomposition)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_ConnectedEnumeration(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(connected_graphs_with_edges(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ConnectedEnumeration)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
