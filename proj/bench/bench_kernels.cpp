#include "expander/codes.hpp"
#include "expander/constructions.hpp"
#include "expander/graph.hpp"
#include "expander/parallel.hpp"
#include "expander/spectral.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

using namespace expander;

namespace {

// Threads come from the second range argument; 0 selects the serial reference.
void with_threads(benchmark::State& state)
{
    const auto t = static_cast<int>(state.range(1));
    set_thread_count(t > 0 ? t : 1);
}

void BM_expansion_exact(benchmark::State& state)
{
    const Graph g = random_connected_regular(static_cast<std::uint32_t>(state.range(0)), 3, 7);
    with_threads(state);
    for (auto _ : state) {
        if (state.range(1) == 0)
            benchmark::DoNotOptimize(serial::expansion_exact(g));
        else
            benchmark::DoNotOptimize(expansion_exact(g));
    }
}
BENCHMARK(BM_expansion_exact)->ArgsProduct({{16, 20}, {0, 1, 4}})->Unit(benchmark::kMillisecond);

void BM_min_distance(benchmark::State& state)
{
    const Graph g = random_connected_regular(static_cast<std::uint32_t>(state.range(0)), 3, 11);
    const auto c = cycle_code(g).code;
    with_threads(state);
    for (auto _ : state) {
        if (state.range(1) == 0)
            benchmark::DoNotOptimize(serial::min_distance_exact(c));
        else
            benchmark::DoNotOptimize(min_distance_exact(c));
    }
}
BENCHMARK(BM_min_distance)->ArgsProduct({{30, 40}, {0, 1, 4}})->Unit(benchmark::kMillisecond);

void BM_adjacency_apply(benchmark::State& state)
{
    const Graph g = random_regular(static_cast<std::uint32_t>(state.range(0)), 8, 3);
    std::vector<double> x(g.n()), y(g.n());
    std::iota(x.begin(), x.end(), 0.0);
    with_threads(state);
    for (auto _ : state) {
        adjacency_apply(g, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(g.n()) * g.k());
}
BENCHMARK(BM_adjacency_apply)->ArgsProduct({{1 << 12, 1 << 18}, {1, 4}});

void BM_dot(benchmark::State& state)
{
    std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = u(rng);
        b[i] = u(rng);
    }
    with_threads(state);
    for (auto _ : state) {
        if (state.range(1) == 0)
            benchmark::DoNotOptimize(serial::dot(a, b));
        else
            benchmark::DoNotOptimize(dot(a, b));
    }
    state.SetBytesProcessed(state.iterations() * std::int64_t(2 * a.size() * sizeof(double)));
}
BENCHMARK(BM_dot)->ArgsProduct({{1 << 12, 1 << 20}, {0, 1, 4}});

} // namespace

BENCHMARK_MAIN();
