#pragma once

#include "csd/types.hpp"

namespace csd {

struct BpdnSettings {
    int max_iters = 2000;
    double abs_tol = 1e-6;
    double rel_tol = 1e-4;
    double rho = 1.0;  // splitting penalty

    void validate() const {
        if (max_iters < 1 || abs_tol <= 0.0 || rel_tol <= 0.0 || rho <= 0.0) {
            throw std::invalid_argument("BpdnSettings: invalid values");
        }
    }
};

enum class BpdnStatus { Converged, NonConverged };

struct BpdnResult {
    Vector theta;
    BpdnStatus status = BpdnStatus::NonConverged;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

/// Basis pursuit denoising: min ||theta||_1 s.t. ||y - A theta||_2 <= epsilon.
///
/// Operator-splitting scheme alternating an l1 proximal step, a
/// least-squares-coupled step, and projection of the residual variable onto
/// the epsilon-ball, with dual-residual-based stopping. Converged results
/// additionally satisfy ||y - A theta||_2 <= epsilon + abs_tol. When
/// ||y||_2 <= epsilon the zero vector is returned immediately.
BpdnResult solve_bpdn(const Matrix& a, const Vector& y, double epsilon,
                      const BpdnSettings& settings = {});

}  // namespace csd
