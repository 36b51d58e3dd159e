#include <benchmark/benchmark.h>

#include "factlab/combinatorics.hpp"
#include "factlab/factor_counts.hpp"
#include "factlab/moments.hpp"
#include "factlab/sieve.hpp"

using namespace factlab;

namespace {

const SieveTable& shared_table() {
    static const SieveTable t = SieveTable::build(10000000);
    return t;
}

void BM_SieveBuild(benchmark::State& state) {
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        SieveTable t = SieveTable::build(limit);
        benchmark::DoNotOptimize(t.prime_count());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_SieveBuild)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
    const SieveTable& t = shared_table();
    std::uint64_t n = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.factorize(n).pairs.size());
        n = n == t.limit() ? 2 : n + 1;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Factorize);

void BM_MomentSumG(benchmark::State& state) {
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    const SieveTable& t = shared_table();
    CountMemo memo;
    memo.prepopulate(limit);
    for (auto _ : state) {
        const MomentReport r = moment_sum('g', 1.0, limit, t, memo);
        benchmark::DoNotOptimize(r.log_sum.log);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_MomentSumG)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_MomentSumFHistogram(benchmark::State& state) {
    const SieveTable& t = shared_table();
    CountMemo memo;
    for (auto _ : state) {
        const MomentReport r = moment_sum('F', 2.0, t.limit(), t, memo);
        benchmark::DoNotOptimize(r.log_sum.log);
    }
}
BENCHMARK(BM_MomentSumFHistogram)->Unit(benchmark::kMillisecond);

void BM_BellNumbers(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        // fresh log each round; the cache itself is persistent
        benchmark::DoNotOptimize(log_bell_exact(k));
    }
}
BENCHMARK(BM_BellNumbers)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
