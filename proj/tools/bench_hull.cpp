// Serial vs OpenMP stage iteration of the hull oracle.
#include <benchmark/benchmark.h>

#include "ordkit/arith.hpp"
#include "ordkit/hull.hpp"

using namespace ordkit;

namespace {

// gamma = w^(0), beta = psi(I;0): a hull that needs several stages to saturate
void args(benchmark::internal::Benchmark* b) {
    for (int cap : {5, 6, 7}) b->Arg(cap);
}

void BM_HullSerial(benchmark::State& st) {
    const int cap = static_cast<int>(st.range(0));
    const HullOracle& o = oracle_for(cap);  // tables built once, outside the timed loop
    Term g = one(), b = psi(reg_top(), zero());
    for (auto _ : st) benchmark::DoNotOptimize(o.run(g, b, 32, false));
    st.counters["universe"] = static_cast<double>(o.size());
}

void BM_HullParallel(benchmark::State& st) {
    const int cap = static_cast<int>(st.range(0));
    const HullOracle& o = oracle_for(cap);
    Term g = one(), b = psi(reg_top(), zero());
    for (auto _ : st) benchmark::DoNotOptimize(o.run(g, b, 32, true));
    st.counters["universe"] = static_cast<double>(o.size());
}

void BM_OracleTables(benchmark::State& st) {
    const int cap = static_cast<int>(st.range(0));
    for (auto _ : st) {
        HullOracle o(cap);
        benchmark::DoNotOptimize(o.size());
    }
}

}  // namespace

BENCHMARK(BM_HullSerial)->Apply(args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HullParallel)->Apply(args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OracleTables)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
