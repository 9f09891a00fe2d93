#pragma once

#include <cstdint>
#include <random>

namespace csd {

/// Seeded generator with hand-rolled distribution transforms.
///
/// std::mt19937_64 output is pinned by the standard, but the standard
/// distributions are not; sampling is done from raw 64-bit words here so
/// that identical seeds give identical streams on any toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Gaussian via Box-Muller; the second deviate of each pair is cached.
    double gaussian(double mean, double stddev);

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Fisher-Yates shuffle driven by uniform_below.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace csd
