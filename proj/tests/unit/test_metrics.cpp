#include "csd/metrics.hpp"
#include "csd/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace csd;

namespace {

Image constant_image(int w, int h, double v) {
    Image img(w, h, v);
    return img;
}

Image checkerboard(int w, int h, int block) {
    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y) = (((x / block) + (y / block)) % 2 == 0) ? 0.0 : 255.0;
        }
    }
    return img;
}

}  // namespace

TEST_CASE("psnr caps at 120 for identical images") {
    const Image img = checkerboard(16, 16, 4);
    CHECK(psnr(img, img) == 120.0);
}

TEST_CASE("psnr of full-range error is 0 dB") {
    CHECK(psnr(constant_image(8, 8, 0.0), constant_image(8, 8, 255.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psnr hand-computed case: uniform offset 16") {
    // MSE = 256 -> 10 log10(255^2/256) = 24.0486...
    const double expected = 10.0 * std::log10(255.0 * 255.0 / 256.0);
    CHECK(expected == doctest::Approx(24.05).epsilon(0.001));
    CHECK(psnr(constant_image(10, 10, 0.0), constant_image(10, 10, 16.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("psnr rejects mismatched dimensions") {
    CHECK_THROWS_AS(psnr(constant_image(4, 4, 0.0), constant_image(4, 5, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("psnr decreases statistically as noise grows") {
    const Image ref = checkerboard(32, 32, 8);
    Rng rng(42);
    double prev = 1e9;
    for (const double sigma : {1.0, 2.0, 4.0, 8.0}) {
        double mean = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            Image noisy = ref;
            for (double& px : noisy.pixels) {
                px = std::clamp(px + rng.gaussian(0.0, sigma), 0.0, 255.0);
            }
            mean += psnr(ref, noisy);
        }
        mean /= 10.0;
        CHECK(mean < prev);
        prev = mean;
    }
}

TEST_CASE("ssim of identical images is exactly 1") {
    const Image img = checkerboard(24, 24, 6);
    CHECK(ssim(img, img) == 1.0);
}

TEST_CASE("ssim of a pattern against its negative is negative") {
    const Image img = checkerboard(32, 32, 4);
    Image negative = img;
    for (double& px : negative.pixels) {
        px = 255.0 - px;
    }
    CHECK(ssim(img, negative) < 0.0);
}

TEST_CASE("ssim luminance-only case matches the closed form") {
    // Constant images: variances and covariance vanish, so only the
    // luminance term survives.
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double expected =
        (2.0 * 128.0 * 138.0 + c1) / (128.0 * 128.0 + 138.0 * 138.0 + c1);
    CHECK(ssim(constant_image(16, 16, 128.0), constant_image(16, 16, 138.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ssim is symmetric") {
    Rng rng(7);
    Image a(20, 20);
    Image b(20, 20);
    for (int i = 0; i < 400; ++i) {
        a.pixels[i] = 255.0 * rng.uniform01();
        b.pixels[i] = 255.0 * rng.uniform01();
    }
    CHECK(std::abs(ssim(a, b) - ssim(b, a)) < 1e-12);
}

TEST_CASE("ssim range stays within [-1, 1] on random images") {
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        Image a(16, 16);
        Image b(16, 16);
        for (int i = 0; i < 256; ++i) {
            a.pixels[i] = 255.0 * rng.uniform01();
            b.pixels[i] = 255.0 * rng.uniform01();
        }
        const double v = ssim(a, b);
        CHECK(v <= 1.0);
        CHECK(v >= -1.0);
    }
}

TEST_CASE("ssim rejects images smaller than the window") {
    CHECK_THROWS_AS(ssim(constant_image(10, 12, 0.0), constant_image(10, 12, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ssim(constant_image(12, 12, 0.0), constant_image(12, 14, 0.0)),
                    std::invalid_argument);
}
