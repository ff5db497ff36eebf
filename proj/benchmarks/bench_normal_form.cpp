#include <benchmark/benchmark.h>

#include "bnf/bitree.hpp"
#include "bnf/initial_data.hpp"
#include "bnf/normal_form.hpp"

using namespace bnf;

static NFConfig config(int J, int N) {
    NFConfig c;
    c.J = J;
    c.K = 10.0;
    c.box_N = N;
    return c;
}

static void BM_EnumerateOrdered(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_ordered(int(st.range(0))));
}
BENCHMARK(BM_EnumerateOrdered)->DenseRange(3, 6);

static void BM_CompileExpansion(benchmark::State& st) {
    const auto cfg = config(int(st.range(0)), int(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(NormalFormExpansion(cfg));
}
BENCHMARK(BM_CompileExpansion)->Args({1, 4})->Args({2, 4})->Args({1, 8})->Args({2, 5})
    ->Unit(benchmark::kMillisecond);

static void BM_EvaluateIntegrand(benchmark::State& st) {
    const NormalFormExpansion nf(config(int(st.range(0)), int(st.range(1))));
    const auto v = random_unit(int(st.range(1)), 3);
    for (auto _ : st) benchmark::DoNotOptimize(nf.integrand(v, 0.05));
    st.counters["terms"] = double(nf.total_terms());
}
BENCHMARK(BM_EvaluateIntegrand)->Args({1, 4})->Args({2, 4})->Args({1, 8})
    ->Unit(benchmark::kMicrosecond);
