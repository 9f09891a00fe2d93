#include "csd/dct.hpp"
#include "csd/gram.hpp"

#include <benchmark/benchmark.h>

using namespace csd;

static void BM_build_gram(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary((p * p) / 3 + 1, p * p, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_gram(phi, psi));
    }
}
BENCHMARK(BM_build_gram)->Arg(8)->Arg(10);

static void BM_flip_update(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const Dictionary psi = dct_dictionary(p);
    SensingMatrix phi = random_binary((p * p) / 3 + 1, p * p, 7);
    GramState st = build_gram(phi, psi);
    int i = 0;
    for (auto _ : state) {
        flip_update(st, phi, psi, i % phi.rows(), i % phi.cols());
        benchmark::DoNotOptimize(st.gram);
        ++i;
    }
}
BENCHMARK(BM_flip_update)->Arg(8)->Arg(10);

static void BM_residual_r3(benchmark::State& state) {
    const Dictionary psi = dct_dictionary(8);
    const GramState st = build_gram(random_binary(24, 64, 3), psi);
    const int s[3] = {5, 17, 40};
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::gram_residual(st.gram, 2, s, 3));
    }
}
BENCHMARK(BM_residual_r3);
