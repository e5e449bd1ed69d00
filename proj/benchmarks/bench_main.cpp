#include <benchmark/benchmark.h>

#include <cmath>

#include "ggc/engine.hpp"
#include "ggc/knn.hpp"
#include "ggc/synthetic.hpp"

namespace {

// lattice inputs isolate the merge loop from graph-construction noise
void bm_cluster_grid(benchmark::State& state) {
    const auto side = static_cast<std::int32_t>(state.range(0));
    const ggc::SparseGraph g = ggc::make_grid_graph(side, side);
    ggc::EngineStats stats;
    for (auto _ : state) {
        const ggc::RunResult res = ggc::run(g, 10);
        benchmark::DoNotOptimize(res.partition.labels.data());
        stats = res.stats;
    }
    state.counters["queue_ops"] = static_cast<double>(stats.queue_ops);
    state.counters["k1_init"] = stats.k1_init;
    state.SetComplexityN(g.vertex_count());
}

void bm_cluster_blobs(benchmark::State& state) {
    const auto n = static_cast<std::int32_t>(state.range(0));
    const ggc::LabeledPoints pts = ggc::make_blobs(n / 10, 10, 10.0, 2, 7);
    const ggc::SparseGraph g = ggc::build_clr_graph(pts.features, 10);
    ggc::EngineStats stats;
    for (auto _ : state) {
        const ggc::RunResult res = ggc::run(g, 10);
        benchmark::DoNotOptimize(res.partition.labels.data());
        stats = res.stats;
    }

    // instrumented counter vs the complexity claim, C = 8
    const double bound = 8.0 * static_cast<double>(g.vertex_count() - 10) *
                         static_cast<double>(stats.k1_max) *
                         std::log2(g.vertex_count() * std::max(1.0, stats.k1_init));
    if (static_cast<double>(stats.queue_ops) > bound) {
        state.SkipWithError("queue_ops exceeded the O((n-c) k1 log(n k1)) budget");
    }
    state.counters["queue_ops"] = static_cast<double>(stats.queue_ops);
    state.counters["k1_init"] = stats.k1_init;
    state.SetComplexityN(g.vertex_count());
}

void bm_build_clr(benchmark::State& state) {
    const auto n = static_cast<std::int32_t>(state.range(0));
    const ggc::LabeledPoints pts = ggc::make_blobs(n / 10, 10, 10.0, 2, 7);
    for (auto _ : state) {
        const ggc::SparseGraph g = ggc::build_clr_graph(pts.features, 10);
        benchmark::DoNotOptimize(g.edge_count());
    }
}

}  // namespace

BENCHMARK(bm_cluster_grid)->Arg(64)->Arg(128)->Arg(192)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(bm_cluster_blobs)
    ->Arg(10000)
    ->Arg(20000)
    ->Arg(40000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity();
BENCHMARK(bm_build_clr)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
