#include "csd/criteria.hpp"
#include "csd/dct.hpp"

#include <benchmark/benchmark.h>

using namespace csd;

namespace {

GramState make_state(int p, int m) {
    const Dictionary psi = dct_dictionary(p);
    return build_gram(random_binary(m, p * p, 42), psi);
}

}  // namespace

static void BM_coherence_loss(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const GramState st = make_state(p, (p * p) / 3 + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coherence_loss(st));
    }
}
BENCHMARK(BM_coherence_loss)->Arg(6)->Arg(8)->Arg(10);

static void BM_bicoherence_loss(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const GramState st = make_state(p, (p * p) / 3 + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bicoherence_loss(st));
    }
}
BENCHMARK(BM_bicoherence_loss)->Arg(6)->Arg(8)->Arg(10);

static void BM_tricoherence_loss(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const GramState st = make_state(p, (p * p) / 3 + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tricoherence_loss(st));
    }
}
BENCHMARK(BM_tricoherence_loss)->Arg(6)->Arg(8);

static void BM_mu_avg(benchmark::State& state) {
    const GramState st = make_state(10, 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mu_avg(st));
    }
}
BENCHMARK(BM_mu_avg);

static void BM_omega2_d25(benchmark::State& state) {
    const GramState st = make_state(5, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(omega2(st, 2.5));
    }
}
BENCHMARK(BM_omega2_d25);
