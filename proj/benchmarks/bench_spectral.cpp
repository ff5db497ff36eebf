#include <benchmark/benchmark.h>

#include "bnf/dynamics.hpp"
#include "bnf/initial_data.hpp"
#include "bnf/phase.hpp"

using namespace bnf;

static void BM_WickNonlinearityFFT(benchmark::State& st) {
    const auto u = random_unit(int(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(wick_nonlinearity(u));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_WickNonlinearityFFT)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

static void BM_NonresonantDirect(benchmark::State& st) {
    const auto u = random_unit(int(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(nonresonant_N(u, u, u));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_NonresonantDirect)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_EvolveSteps(benchmark::State& st) {
    const auto u = gaussian_data(int(st.range(0)), 2.0, 1);
    for (auto _ : st)
        benchmark::DoNotOptimize(evolve(u, EquationKind::wick(), 0.01, {1e-4, 100}));
    st.counters["steps/s"] = benchmark::Counter(100.0 * double(st.iterations()),
                                                benchmark::Counter::kIsRate);
}
BENCHMARK(BM_EvolveSteps)->Arg(32)->Arg(128)->Arg(512);

static void BM_FactorizationAudit(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(check_factorization(st.range(0)));
}
BENCHMARK(BM_FactorizationAudit)->Arg(16)->Arg(32);
