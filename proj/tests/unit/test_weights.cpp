#include "csd/dct.hpp"
#include "csd/weights.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace csd;

TEST_CASE("weights of a single scaled atom isolate that frequency") {
    const Dictionary psi = dct_dictionary(2);
    const Vector patch = 5.0 * psi.basis().col(3);
    const WeightVector w = compute_weights({patch}, psi);
    REQUIRE(w.values.size() == 4);
    CHECK(w.source_count == 1);
    CHECK_FALSE(w.uniform_fallback);
    for (int l = 0; l < 4; ++l) {
        CHECK(w.values(l) == doctest::Approx(l == 3 ? 5.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("all-zero training set falls back to uniform weights") {
    const Dictionary psi = dct_dictionary(2);
    const WeightVector w =
        compute_weights({Vector::Zero(4), Vector::Zero(4)}, psi);
    CHECK(w.uniform_fallback);
    CHECK((w.values.array() == 1.0).all());
    CHECK(w.source_count == 2);
}

TEST_CASE("sign-flipped patches produce identical weights") {
    const Dictionary psi = dct_dictionary(3);
    Vector x(9);
    x << 4, -1, 2, 0, 3, -5, 1, 1, 2;
    const WeightVector w = compute_weights({x, -x}, psi);
    const Vector expected = (psi.basis().transpose() * x).cwiseAbs();
    CHECK((w.values - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weights are invariant to patch ordering") {
    const Dictionary psi = dct_dictionary(3);
    std::vector<Vector> patches;
    for (std::uint64_t s = 0; s < 40; ++s) {
        patches.push_back(oracle::randn(9, 1, 50 + s).col(0) * 30.0);
    }
    std::vector<Vector> shuffled = patches;
    std::mt19937 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const WeightVector w1 = compute_weights(patches, psi);
    const WeightVector w2 = compute_weights(shuffled, psi);
    CHECK((w1.values - w2.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scaling training pixels scales the weights linearly") {
    const Dictionary psi = dct_dictionary(3);
    std::vector<Vector> patches, scaled;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Vector x = oracle::randn(9, 1, 80 + s).col(0);
        patches.push_back(x);
        scaled.push_back(2.5 * x);
    }
    const WeightVector w1 = compute_weights(patches, psi);
    const WeightVector w2 = compute_weights(scaled, psi);
    CHECK((w2.values - 2.5 * w1.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("compute_weights validates input") {
    const Dictionary psi = dct_dictionary(2);
    CHECK_THROWS_AS(compute_weights({}, psi), std::invalid_argument);
    CHECK_THROWS_AS(compute_weights({Vector::Zero(5)}, psi), std::invalid_argument);
}

TEST_CASE("extract_patches counts and discards partial blocks") {
    CHECK(extract_patches(Image(10, 10), 10).size() == 1);
    CHECK(extract_patches(Image(240, 160), 10).size() == 384);
    CHECK(extract_patches(Image(160, 240), 10).size() == 384);
    CHECK(extract_patches(Image(25, 25), 10).size() == 4);
    CHECK_THROWS_AS(extract_patches(Image(9, 20), 10), std::invalid_argument);
}

TEST_CASE("extract_patches keeps native scale and row-major block order") {
    Image img(4, 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            img.at(x, y) = y * 4 + x;  // unique values
        }
    }
    const auto patches = extract_patches(img, 2);
    REQUIRE(patches.size() == 4);
    // Block (0,0): pixels (0,0),(1,0),(0,1),(1,1) row-major.
    CHECK(patches[0](0) == 0.0);
    CHECK(patches[0](1) == 1.0);
    CHECK(patches[0](2) == 4.0);
    CHECK(patches[0](3) == 5.0);
    // Block row-major order: second block is to the right.
    CHECK(patches[1](0) == 2.0);
    CHECK(patches[2](0) == 8.0);
    CHECK(patches[3](3) == 15.0);
}

TEST_CASE("DC weight dominates on smooth natural-looking images") {
    const Dictionary psi = dct_dictionary(8);
    std::vector<Vector> patches;
    for (std::uint64_t s = 0; s < 4; ++s) {
        const Image img = synth_image(64, 64, 1000 + s);
        auto chunk = extract_patches(img, 8);
        patches.insert(patches.end(), chunk.begin(), chunk.end());
    }
    const WeightVector w = compute_weights(patches, psi);
    const double dc = w.values(0);
    const double rest_mean =
        (w.values.sum() - dc) / static_cast<double>(w.values.size() - 1);
    CHECK(dc > rest_mean);
}
