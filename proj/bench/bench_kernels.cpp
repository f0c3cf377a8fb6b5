// Serial reference kernels against their OpenMP counterparts. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "gmentropy/oracle.hpp"
#include "gmentropy/power_integrals.hpp"
#include "gmentropy/presets.hpp"
#include "gmentropy/reference.hpp"

using namespace gmentropy;

namespace {

const GaussianMixture& row(int i) {
    static const std::vector<GaussianMixture> mixtures = [] {
        std::vector<GaussianMixture> out;
        for (const auto& name : preset_names()) out.push_back(preset(name));
        return out;
    }();
    return mixtures.at(static_cast<std::size_t>(i));
}

void BM_mc_reference(benchmark::State& state) {
    const auto& mix = row(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::mc_entropy(mix, 1 << 18, 11).value);
    state.SetItemsProcessed(state.iterations() * (1 << 18));
}

void BM_mc_parallel(benchmark::State& state) {
    const auto& mix = row(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mc_entropy(mix, 1 << 18, 11).value);
    state.SetItemsProcessed(state.iterations() * (1 << 18));
}

void BM_grid_reference(benchmark::State& state) {
    const GridSpec spec{static_cast<int>(state.range(1)), 8.0};
    const auto& mix = row(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::grid_entropy(mix, spec).value);
}

void BM_grid_parallel(benchmark::State& state) {
    const GridSpec spec{static_cast<int>(state.range(1)), 8.0};
    const auto& mix = row(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(grid_entropy(mix, spec).value);
}

void BM_power_reference(benchmark::State& state) {
    const auto& mix = row(static_cast<int>(state.range(0)));
    const int a = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(reference::log_power_integral(mix, a));
}

void BM_power_parallel(benchmark::State& state) {
    const auto& mix = row(static_cast<int>(state.range(0)));
    const int a = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(log_power_integral(mix, a));
}

}  // namespace

BENCHMARK(BM_mc_reference)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_reference)->Args({0, 501})->Args({1, 1001})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_parallel)->Args({0, 501})->Args({1, 1001})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_power_reference)->Args({2, 8})->Args({4, 8})->Args({4, 12})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_power_parallel)->Args({2, 8})->Args({4, 8})->Args({4, 12})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
