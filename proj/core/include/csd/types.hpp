#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace csd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class MatrixMode { Binary, Continuous };

/// m x d measurement operator applied to each vectorized image block.
///
/// Binary mode requires every entry to be exactly 0 or 1; continuous mode
/// requires entries in [0, 1] within 1e-9. m <= d is enforced (the strict
/// compressive regime m < d is enforced at the experiment-config level;
/// the determined case m == d is allowed so that square systems can be
/// exercised by the pipeline).
class SensingMatrix {
public:
    SensingMatrix(Matrix entries, MatrixMode mode);

    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    MatrixMode mode() const { return mode_; }
    const Matrix& entries() const { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

    /// Sets one entry, re-validating it against the mode.
    void set(int i, int j, double value);

private:
    Matrix entries_;
    MatrixMode mode_;
};

/// Random {0,1} Bernoulli(1/2) matrix. Deterministic per seed.
SensingMatrix random_binary(int m, int d, std::uint64_t seed);

/// Random U(0,1) matrix. Deterministic per seed.
SensingMatrix random_continuous(int m, int d, std::uint64_t seed);

/// d x d orthonormal sparsifying basis; columns are atoms.
/// Orthonormality (Psi^T Psi = I within 1e-10 per entry) is checked at
/// construction.
class Dictionary {
public:
    explicit Dictionary(Matrix basis);

    int dim() const { return static_cast<int>(basis_.rows()); }
    const Matrix& basis() const { return basis_; }

private:
    Matrix basis_;
};

}  // namespace csd
