#include "csd/gram.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace csd {

GramState build_gram(const SensingMatrix& phi, const Dictionary& psi) {
    if (phi.cols() != psi.dim()) {
        throw std::invalid_argument("build_gram: phi.cols() != psi.dim()");
    }
    GramState state;
    state.effective = phi.entries() * psi.basis();
    state.gram = state.effective.transpose() * state.effective;
    return state;
}

void flip_update(GramState& state, SensingMatrix& phi, const Dictionary& psi,
                 int row, int col) {
    if (phi.mode() != MatrixMode::Binary) {
        throw std::invalid_argument("flip_update: phi must be binary");
    }
    if (row < 0 || row >= phi.rows() || col < 0 || col >= phi.cols()) {
        throw std::out_of_range("flip_update: index out of range");
    }
    if (phi.cols() != psi.dim() || state.effective.rows() != phi.rows()) {
        throw std::invalid_argument("flip_update: inconsistent state");
    }

    const double delta = 1.0 - 2.0 * phi(row, col);
    const Vector a = state.effective.row(row);  // pre-update row of A
    const Vector u = psi.basis().row(col);      // row `col` of Psi

    // G += delta (a^T u + u^T a) + delta^2 u^T u, then A_row += delta u.
    // The fused per-entry expression keeps G bitwise symmetric.
    const int d = phi.cols();
    const double d2 = delta * delta;
    const double* ap = a.data();
    const double* up = u.data();
    for (int j = 0; j < d; ++j) {
        const double aj = ap[j];
        const double uj = up[j];
        double* gcol = state.gram.col(j).data();
        for (int i = 0; i < d; ++i) {
            gcol[i] += delta * (ap[i] * uj + up[i] * aj) + d2 * up[i] * uj;
        }
    }
    state.effective.row(row) += delta * u.transpose();
    phi.set(row, col, 1.0 - phi(row, col));
}

namespace detail {

namespace {

// Truncated eigen pseudo-inverse solve of the r x r PSD block; eigenvalues
// below 1e-10 * lambda_max are dropped.
double pinv_residual(const Matrix& gram, int t, const int* s, int r,
                     double* beta_out) {
    Eigen::Matrix3d block;
    Eigen::Vector3d rhs;
    for (int a = 0; a < r; ++a) {
        rhs(a) = gram(s[a], t);
        for (int b = 0; b < r; ++b) {
            block(a, b) = gram(s[a], s[b]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        block.topLeftCorner(r, r));
    const auto& vals = eig.eigenvalues();
    const auto& vecs = eig.eigenvectors();
    const double lmax = vals.cwiseAbs().maxCoeff();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(r);
    if (lmax > 0.0) {
        for (int a = 0; a < r; ++a) {
            if (vals(a) > 1e-10 * lmax) {
                const double coeff = vecs.col(a).dot(rhs.head(r)) / vals(a);
                beta += coeff * vecs.col(a);
            }
        }
    }
    if (beta_out != nullptr) {
        for (int a = 0; a < r; ++a) {
            beta_out[a] = beta(a);
        }
    }
    double res = gram(t, t);
    for (int a = 0; a < r; ++a) {
        res -= rhs(a) * beta(a);
    }
    return std::max(res, 0.0);
}

}  // namespace

double gram_residual(const Matrix& gram, int t, const int* s, int r,
                     double* beta_out) {
    const double gtt = gram(t, t);
    switch (r) {
        case 1: {
            const double a = gram(s[0], s[0]);
            const double p = gram(s[0], t);
            if (!(a > 0.0)) {
                if (beta_out != nullptr) beta_out[0] = 0.0;
                return std::max(gtt, 0.0);
            }
            const double beta = p / a;
            if (beta_out != nullptr) beta_out[0] = beta;
            return std::max(gtt - p * beta, 0.0);
        }
        case 2: {
            const double a = gram(s[0], s[0]);
            const double b = gram(s[0], s[1]);
            const double c = gram(s[1], s[1]);
            const double p = gram(s[0], t);
            const double q = gram(s[1], t);
            const double det = a * c - b * b;
            const double scale = a * c;
            if (!(std::abs(det) > 1e-10 * scale)) {
                return pinv_residual(gram, t, s, 2, beta_out);
            }
            const double beta0 = (c * p - b * q) / det;
            const double beta1 = (a * q - b * p) / det;
            if (beta_out != nullptr) {
                beta_out[0] = beta0;
                beta_out[1] = beta1;
            }
            return std::max(gtt - (p * beta0 + q * beta1), 0.0);
        }
        case 3: {
            const double a = gram(s[0], s[0]);
            const double b = gram(s[0], s[1]);
            const double c = gram(s[0], s[2]);
            const double d = gram(s[1], s[1]);
            const double e = gram(s[1], s[2]);
            const double f = gram(s[2], s[2]);
            const double p = gram(s[0], t);
            const double q = gram(s[1], t);
            const double w = gram(s[2], t);
            const double a11 = d * f - e * e;
            const double a12 = c * e - b * f;
            const double a13 = b * e - c * d;
            const double det = a * a11 + b * a12 + c * a13;
            const double scale = a * d * f;
            if (!(std::abs(det) > 1e-10 * scale)) {
                return pinv_residual(gram, t, s, 3, beta_out);
            }
            const double a22 = a * f - c * c;
            const double a23 = b * c - a * e;
            const double a33 = a * d - b * b;
            const double beta0 = (a11 * p + a12 * q + a13 * w) / det;
            const double beta1 = (a12 * p + a22 * q + a23 * w) / det;
            const double beta2 = (a13 * p + a23 * q + a33 * w) / det;
            if (beta_out != nullptr) {
                beta_out[0] = beta0;
                beta_out[1] = beta1;
                beta_out[2] = beta2;
            }
            return std::max(gtt - (p * beta0 + q * beta1 + w * beta2), 0.0);
        }
        default:
            throw std::invalid_argument("gram_residual: subset size must be 1..3");
    }
}

}  // namespace detail

double small_inverse_residual(const GramState& state, int target,
                              std::span<const int> subset) {
    const int d = state.dim();
    const int r = static_cast<int>(subset.size());
    if (r < 1 || r > 3) {
        throw std::invalid_argument(
            "small_inverse_residual: subset size must be 1..3");
    }
    if (target < 0 || target >= d) {
        throw std::out_of_range("small_inverse_residual: target out of range");
    }
    for (int a = 0; a < r; ++a) {
        if (subset[a] < 0 || subset[a] >= d) {
            throw std::out_of_range("small_inverse_residual: subset index " +
                                    std::to_string(subset[a]) + " out of range");
        }
        if (subset[a] == target) {
            throw std::invalid_argument(
                "small_inverse_residual: subset contains the target");
        }
        for (int b = a + 1; b < r; ++b) {
            if (subset[a] == subset[b]) {
                throw std::invalid_argument(
                    "small_inverse_residual: subset indices must be distinct");
            }
        }
    }
    return detail::gram_residual(state.gram, target, subset.data(), r);
}

}  // namespace csd
