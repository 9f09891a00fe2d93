#include "csd/types.hpp"

#include "csd/random.hpp"

#include <cmath>
#include <string>

namespace csd {

namespace {

constexpr double kContinuousSlack = 1e-9;

void check_entry(double v, MatrixMode mode, int i, int j) {
    if (mode == MatrixMode::Binary) {
        if (v != 0.0 && v != 1.0) {
            throw std::invalid_argument(
                "SensingMatrix: binary entry (" + std::to_string(i) + "," +
                std::to_string(j) + ") must be exactly 0 or 1");
        }
    } else {
        if (!(v >= -kContinuousSlack && v <= 1.0 + kContinuousSlack)) {
            throw std::invalid_argument(
                "SensingMatrix: continuous entry (" + std::to_string(i) + "," +
                std::to_string(j) + ") outside [0,1]");
        }
    }
}

}  // namespace

SensingMatrix::SensingMatrix(Matrix entries, MatrixMode mode)
    : entries_(std::move(entries)), mode_(mode) {
    if (entries_.rows() < 1 || entries_.cols() < 1) {
        throw std::invalid_argument("SensingMatrix: dimensions must be positive");
    }
    if (entries_.rows() > entries_.cols()) {
        throw std::invalid_argument("SensingMatrix: requires m <= d");
    }
    for (int j = 0; j < entries_.cols(); ++j) {
        for (int i = 0; i < entries_.rows(); ++i) {
            check_entry(entries_(i, j), mode_, i, j);
        }
    }
}

void SensingMatrix::set(int i, int j, double value) {
    if (i < 0 || i >= rows() || j < 0 || j >= cols()) {
        throw std::out_of_range("SensingMatrix::set: index out of range");
    }
    check_entry(value, mode_, i, j);
    entries_(i, j) = value;
}

SensingMatrix random_binary(int m, int d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix e(m, d);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < d; ++j) {
            e(i, j) = (rng.next_u64() & 1u) ? 1.0 : 0.0;
        }
    }
    return SensingMatrix(std::move(e), MatrixMode::Binary);
}

SensingMatrix random_continuous(int m, int d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix e(m, d);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < d; ++j) {
            e(i, j) = rng.uniform01();
        }
    }
    return SensingMatrix(std::move(e), MatrixMode::Continuous);
}

Dictionary::Dictionary(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() < 1 || basis_.rows() != basis_.cols()) {
        throw std::invalid_argument("Dictionary: basis must be square");
    }
    const Matrix gram = basis_.transpose() * basis_;
    const int d = static_cast<int>(basis_.rows());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(gram(i, j) - want) > 1e-10) {
                throw std::invalid_argument("Dictionary: basis is not orthonormal");
            }
        }
    }
}

}  // namespace csd
