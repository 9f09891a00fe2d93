#include "csd/bpdn.hpp"
#include "csd/dct.hpp"
#include "csd/pipeline.hpp"
#include "csd/random.hpp"

#include <benchmark/benchmark.h>

using namespace csd;

namespace {

struct PatchProblem {
    Matrix a;
    Vector y;
    double epsilon;
};

// One block of the evaluation pipeline: binary 24x64 sensing matrix, DCT
// effective matrix, noisy measurement of a smooth patch.
PatchProblem pipeline_instance() {
    const int p = 8;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary(24, p * p, 11);
    const Image img = synth_image(p, p, 5);
    const auto patches = extract_patches(img, p);
    const MeasurementSet ms = sense(patches, phi, 4.0, 9);
    return PatchProblem{phi.entries() * psi.basis(), ms.measurements[0],
                        2.0 * std::sqrt(24.0)};
}

}  // namespace

static void BM_bpdn_pipeline_patch(benchmark::State& state) {
    const PatchProblem prob = pipeline_instance();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_bpdn(prob.a, prob.y, prob.epsilon, {}));
    }
}
BENCHMARK(BM_bpdn_pipeline_patch);

static void BM_bpdn_planted_32x64(benchmark::State& state) {
    Rng rng(21);
    Matrix a(32, 64);
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 64; ++j) {
            a(i, j) = rng.gaussian(0.0, 1.0);
        }
    }
    for (int j = 0; j < 64; ++j) {
        a.col(j).normalize();
    }
    Vector theta = Vector::Zero(64);
    theta(3) = 1.5;
    theta(31) = -2.0;
    theta(60) = 1.1;
    const Vector y = a * theta;
    BpdnSettings settings;
    settings.abs_tol = 1e-7;
    settings.rel_tol = 1e-7;
    settings.max_iters = 40000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_bpdn(a, y, 1e-6, settings));
    }
}
BENCHMARK(BM_bpdn_planted_32x64);
