#include <benchmark/benchmark.h>

#include "bnf/analysis.hpp"
#include "bnf/initial_data.hpp"

using namespace bnf;

static void BM_SymbolWindow(benchmark::State& st) {
    const EnergySymbol sym(-1.0 / 3.0, 1.0 / 12.0, 4, 1.0);
    double x = 12.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(sym(x));
        x = x > 20.0 ? 12.0 : x + 0.01;
    }
}
BENCHMARK(BM_SymbolWindow);

static void BM_FluxDensity(benchmark::State& st) {
    const int N = int(st.range(0));
    const auto a = symbol_weights(EnergySymbol(-1.0 / 3.0, 1.0 / 12.0, 3, 1.0), N);
    const auto u = random_unit(N, 2);
    for (auto _ : st) benchmark::DoNotOptimize(flux_density(u, a));
}
BENCHMARK(BM_FluxDensity)->Arg(8)->Arg(16)->Arg(32);

static void BM_StrichartzRatio(benchmark::State& st) {
    const auto f = random_unit(int(st.range(0)), 4);
    for (auto _ : st) benchmark::DoNotOptimize(strichartz_ratio(f, 4, 1.0));
}
BENCHMARK(BM_StrichartzRatio)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
