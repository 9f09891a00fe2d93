#include "csd/dct.hpp"
#include "csd/metrics.hpp"
#include "csd/pipeline.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace csd;

TEST_CASE("sense without noise is the exact matrix product") {
    const SensingMatrix phi = random_binary(4, 9, 1);
    std::vector<Vector> patches;
    for (std::uint64_t s = 0; s < 5; ++s) {
        patches.push_back(oracle::randu(9, 1, 10 + s).col(0) * 255.0);
    }
    const MeasurementSet ms = sense(patches, phi, 0.0, 99);
    REQUIRE(ms.measurements.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK((ms.measurements[i] - phi.entries() * patches[i])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
    const MeasurementSet zero =
        sense({Vector::Zero(9), Vector::Zero(9)}, phi, 0.0, 99);
    for (const auto& y : zero.measurements) {
        CHECK(y.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("sense noise variance concentrates near sigma2 = 4") {
    const SensingMatrix phi =
        SensingMatrix(Matrix::Zero(4, 9), MatrixMode::Binary);
    const std::vector<Vector> patches(10000, Vector::Zero(9));
    const MeasurementSet ms = sense(patches, phi, 4.0, 2024);
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;
    for (const auto& y : ms.measurements) {
        for (int i = 0; i < y.size(); ++i) {
            sum += y(i);
            sum_sq += y(i) * y(i);
            ++n;
        }
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sum_sq / static_cast<double>(n) - mean * mean;
    CHECK(var > 3.8);
    CHECK(var < 4.2);
}

TEST_CASE("sense is deterministic per seed with independent patch noise") {
    const SensingMatrix phi = random_binary(4, 9, 3);
    const std::vector<Vector> patches(5000, Vector::Zero(9));
    const MeasurementSet a = sense(patches, phi, 4.0, 7);
    const MeasurementSet b = sense(patches, phi, 4.0, 7);
    for (std::size_t i = 0; i < patches.size(); ++i) {
        CHECK(a.measurements[i] == b.measurements[i]);
    }
    // Correlation between the first noise coordinate of consecutive patches.
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const std::size_t pairs = patches.size() - 1;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double x = a.measurements[i](0);
        const double y = a.measurements[i + 1](0);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double nf = static_cast<double>(pairs);
    const double cov = sxy / nf - (sx / nf) * (sy / nf);
    const double vx = sxx / nf - (sx / nf) * (sx / nf);
    const double vy = syy / nf - (sy / nf) * (sy / nf);
    CHECK(std::abs(cov / std::sqrt(vx * vy)) < 0.05);
}

TEST_CASE("sense validates inputs") {
    const SensingMatrix phi = random_binary(4, 9, 3);
    CHECK_THROWS_AS(sense({Vector::Zero(8)}, phi, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sense({Vector::Zero(9)}, phi, -1.0, 1), std::invalid_argument);
}

TEST_CASE("assemble_patches inverts extract_patches") {
    const Image img = synth_image(24, 16, 5);
    const auto patches = extract_patches(img, 4);
    const Image back = assemble_patches(patches, 16 / 4, 24 / 4, 4);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(back.pixels[i] == img.pixels[i]);
    }
}

TEST_CASE("round trip at m = d with no noise recovers the image") {
    const int p = 4;
    const int d = p * p;
    const Dictionary psi = dct_dictionary(p);
    // Determined system: the binary identity matrix makes A = Psi square
    // and orthonormal.
    const SensingMatrix phi(Matrix::Identity(d, d), MatrixMode::Binary);

    const Image img = synth_image(2 * p, 2 * p, 21);
    const MeasurementSet ms = sense_image(img, p, phi, 0.0, 3);
    BpdnSettings settings;
    settings.abs_tol = 1e-9;
    settings.rel_tol = 1e-8;
    settings.max_iters = 50000;
    const Image rec = reconstruct_image(ms, phi, psi, 1e-6, settings, 2);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(std::abs(rec.pixels[i] - img.pixels[i]) < 1e-3);
    }
}

TEST_CASE("exactly 3-sparse patches are recovered through the full path") {
    const int p = 4;
    const int d = p * p;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi(Matrix::Identity(d, d), MatrixMode::Binary);

    // Patches built from 3 atoms each, scaled to stay inside [0,255].
    std::vector<Vector> patches;
    for (int k = 0; k < 4; ++k) {
        Vector theta = Vector::Zero(d);
        theta(0) = 400.0;           // DC keeps pixels near 100
        theta(3 + k) = 15.0;
        theta(9 + k) = -12.0;
        patches.push_back(psi.basis() * theta);
    }
    const Image img = assemble_patches(patches, 2, 2, p);
    CHECK(img.pixels.size() == 64);
    for (const double px : img.pixels) {
        REQUIRE(px >= 0.0);
        REQUIRE(px <= 255.0);
    }

    const MeasurementSet ms = sense_image(img, p, phi, 0.0, 3);
    BpdnSettings settings;
    settings.abs_tol = 1e-9;
    settings.rel_tol = 1e-8;
    settings.max_iters = 50000;
    const Image rec = reconstruct_image(ms, phi, psi, 1e-6, settings, 1);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(std::abs(rec.pixels[i] - img.pixels[i]) < 1e-3);
    }
}

TEST_CASE("zero measurements with a large epsilon give the zero image") {
    const int p = 3;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary(4, 9, 5);
    MeasurementSet ms;
    ms.m = 4;
    ms.sigma2 = 0.0;
    ms.grid_rows = 2;
    ms.grid_cols = 2;
    ms.measurements.assign(4, Vector::Zero(4));
    const Image rec = reconstruct_image(ms, phi, psi, 100.0, {}, 1);
    for (const double px : rec.pixels) {
        CHECK(px == 0.0);
    }
}

TEST_CASE("reconstruct_image counts non-converged patches but continues") {
    const int p = 3;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary(5, 9, 6);
    const Image img = synth_image(9, 9, 9);
    const MeasurementSet ms = sense_image(img, p, phi, 0.0, 1);
    BpdnSettings starving;
    starving.max_iters = 2;
    ReconstructionStats stats;
    const Image rec = reconstruct_image(ms, phi, psi, 1e-6, starving, 1, &stats);
    CHECK(stats.patches == 9);
    CHECK(stats.nonconverged == 9);
    CHECK(rec.width == 9);
}

TEST_CASE("reconstruction is identical across job counts") {
    const int p = 3;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary(5, 9, 12);
    const Image img = synth_image(12, 12, 13);
    const MeasurementSet ms = sense_image(img, p, phi, 4.0, 17);
    const Image r1 = reconstruct_image(ms, phi, psi, 4.0, {}, 1);
    const Image r2 = reconstruct_image(ms, phi, psi, 4.0, {}, 2);
    for (std::size_t i = 0; i < r1.pixels.size(); ++i) {
        CHECK(r1.pixels[i] == r2.pixels[i]);
    }
}

TEST_CASE("calibrate_epsilon with zero noise selects the smallest candidate") {
    const int p = 3;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary(5, 9, 30);
    std::vector<Vector> validation;
    for (std::uint64_t s = 0; s < 4; ++s) {
        validation.push_back(oracle::randu(9, 1, 40 + s).col(0) * 200.0);
    }
    const double eps = calibrate_epsilon(phi, psi, validation, 0.0,
                                         {0.0, 0.6, 1.0, 2.0}, 3);
    CHECK(eps == 0.0);
}

TEST_CASE("calibrate_epsilon returns the argmax of the mean patch psnr") {
    const int p = 3;
    const Dictionary psi = dct_dictionary(p);
    const SensingMatrix phi = random_binary(6, 9, 31);
    std::vector<Vector> validation;
    for (std::uint64_t s = 0; s < 6; ++s) {
        const Image img = synth_image(3, 3, 50 + s);
        validation.push_back(extract_patches(img, 3)[0]);
    }
    std::vector<double> scores;
    const double eps = calibrate_epsilon(phi, psi, validation, 4.0,
                                         default_epsilon_grid(), 5, {}, 2, &scores);
    REQUIRE(scores.size() == default_epsilon_grid().size());
    const double unit = 2.0 * std::sqrt(6.0);
    double best = -1.0;
    double best_eps = 0.0;
    std::vector<double> sorted_grid = default_epsilon_grid();
    std::sort(sorted_grid.begin(), sorted_grid.end());
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (scores[k] > best) {
            best = scores[k];
            best_eps = sorted_grid[k] * unit;
        }
    }
    CHECK(eps == best_eps);
    for (const double s : scores) {
        CHECK(best >= s);
    }
}

TEST_CASE("calibrate_epsilon validates inputs") {
    const Dictionary psi = dct_dictionary(3);
    const SensingMatrix phi = random_binary(5, 9, 1);
    CHECK_THROWS_AS(calibrate_epsilon(phi, psi, {}, 1.0, {1.0}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_epsilon(phi, psi, {Vector::Zero(9)}, 1.0, {}, 1),
                    std::invalid_argument);
}
