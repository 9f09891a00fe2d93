#include "support/oracles.hpp"

#include "csd/random.hpp"

#include <Eigen/QR>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

double residual_lstsq(const Matrix& a, int target, const std::vector<int>& subset) {
    const int r = static_cast<int>(subset.size());
    Matrix as(a.rows(), r);
    for (int k = 0; k < r; ++k) {
        as.col(k) = a.col(subset[k]);
    }
    const Vector alpha = as.colPivHouseholderQr().solve(a.col(target));
    return (a.col(target) - as * alpha).squaredNorm();
}

namespace {

double tuple_weight(const csd::WeightVector* w, const std::vector<int>& idx) {
    if (w == nullptr) {
        return 1.0;
    }
    double prod = 1.0;
    for (const int i : idx) {
        prod *= w->values(i);
    }
    return std::pow(prod, 1.0 / static_cast<double>(idx.size()));
}

}  // namespace

namespace {

// Unit-normalize columns; zero columns stay zero (the loss conventions
// below handle them explicitly).
Matrix normalize_columns(const Matrix& a) {
    Matrix n = a;
    for (int j = 0; j < n.cols(); ++j) {
        const double norm = n.col(j).norm();
        if (norm > 0.0) {
            n.col(j) /= norm;
        }
    }
    return n;
}

}  // namespace

double coherence_loss(const Matrix& a, const csd::WeightVector* weights) {
    const Matrix n = normalize_columns(a);
    const int d = static_cast<int>(n.cols());
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        if (a.col(i).squaredNorm() < 1e-12) {
            continue;  // zero target
        }
        for (int j = i + 1; j < d; ++j) {
            double term;
            if (a.col(j).squaredNorm() < 1e-12) {
                term = 1.0;  // projection onto a zero column is the zero map
            } else {
                term = residual_lstsq(n, i, {j});
            }
            total += tuple_weight(weights, {i, j}) * term;
        }
    }
    return total;
}

double bicoherence_loss(const Matrix& a, const csd::WeightVector* weights) {
    const Matrix n = normalize_columns(a);
    const int d = static_cast<int>(n.cols());
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        if (a.col(i).squaredNorm() < 1e-12) {
            continue;
        }
        for (int j = i + 1; j < d; ++j) {
            for (int k = j + 1; k < d; ++k) {
                total += tuple_weight(weights, {i, j, k}) *
                         residual_lstsq(n, i, {j, k});
            }
        }
    }
    return total;
}

double tricoherence_loss(const Matrix& a, const csd::WeightVector* weights) {
    const Matrix n = normalize_columns(a);
    const int d = static_cast<int>(n.cols());
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        if (a.col(i).squaredNorm() < 1e-12) {
            continue;
        }
        for (int j = i + 1; j < d; ++j) {
            for (int k = j + 1; k < d; ++k) {
                for (int l = k + 1; l < d; ++l) {
                    total += tuple_weight(weights, {i, j, k, l}) *
                             residual_lstsq(n, i, {j, k, l});
                }
            }
        }
    }
    return total;
}

double mu_max(const Matrix& a) {
    Matrix n = a;
    for (int j = 0; j < n.cols(); ++j) {
        n.col(j).normalize();
    }
    const Matrix g = n.transpose() * n;
    double best = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i != j) {
                best = std::max(best, std::abs(g(i, j)));
            }
        }
    }
    return best;
}

double mu_avg(const Matrix& a) {
    Matrix n = a;
    for (int j = 0; j < n.cols(); ++j) {
        n.col(j).normalize();
    }
    const Matrix g = n.transpose() * n;
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i != j) {
                sum += g(i, j) * g(i, j);
            }
        }
    }
    return std::sqrt(sum);
}

double omega2_grid(const Matrix& gram, double s) {
    const int d = static_cast<int>(gram.cols());
    const int steps = 21;  // -1.0, -0.9, ..., 1.0
    std::vector<int> idx(d, 0);
    Vector z(d);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        for (int k = 0; k < d; ++k) {
            z(k) = -1.0 + 0.1 * idx[k];
        }
        const double linf = z.cwiseAbs().maxCoeff();
        if (linf > 0.0 && z.lpNorm<1>() / linf <= s) {
            best = std::min(best, (gram * z).norm() / linf);
        }
        int pos = 0;
        while (pos < d && ++idx[pos] == steps) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == d) {
            break;
        }
    }
    return best;
}

double simplex_min(const Matrix& e, const Vector& b, const Vector& c) {
    const int m = static_cast<int>(e.rows());
    const int n = static_cast<int>(e.cols());

    // Tableau with artificial basis: columns [x | artificials | rhs].
    Matrix t(m, n + m + 1);
    t.setZero();
    for (int i = 0; i < m; ++i) {
        const double sign = b(i) < 0.0 ? -1.0 : 1.0;
        t.block(i, 0, 1, n) = sign * e.row(i);
        t(i, n + i) = 1.0;
        t(i, n + m) = sign * b(i);
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        basis[i] = n + i;
    }

    auto pivot = [&](int row, int col) {
        t.row(row) /= t(row, col);
        for (int i = 0; i < m; ++i) {
            if (i != row && t(i, col) != 0.0) {
                t.row(i) -= t(i, col) * t.row(row);
            }
        }
        basis[row] = col;
    };

    auto solve_phase = [&](const Vector& cost, int ncols) {
        for (int guard = 0; guard < 50000; ++guard) {
            // Reduced costs under the current basis.
            Vector y = Vector::Zero(m);
            for (int i = 0; i < m; ++i) {
                y(i) = cost(basis[i]);
            }
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {  // Bland: first negative
                const double red = cost(j) - y.dot(t.col(j));
                if (red < -1e-9) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                return;
            }
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                if (t(i, enter) > 1e-12) {
                    const double ratio = t(i, n + m) / t(i, enter);
                    if (leave < 0 || ratio < best_ratio - 1e-12 ||
                        (std::abs(ratio - best_ratio) <= 1e-12 &&
                         basis[i] < basis[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) {
                throw std::runtime_error("simplex: unbounded");
            }
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex: iteration guard tripped");
    };

    // Phase 1: drive the artificials out.
    Vector phase1 = Vector::Zero(n + m + 1);
    for (int j = n; j < n + m; ++j) {
        phase1(j) = 1.0;
    }
    solve_phase(phase1, n + m);
    double art = 0.0;
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= n) {
            art += t(i, n + m);
        }
    }
    if (art > 1e-7) {
        throw std::runtime_error("simplex: infeasible");
    }
    // Pivot any lingering artificial basics onto structural columns.
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= n) {
            for (int j = 0; j < n; ++j) {
                if (std::abs(t(i, j)) > 1e-9) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // Phase 2 on the structural columns only.
    Vector phase2 = Vector::Zero(n + m + 1);
    phase2.head(n) = c;
    for (int j = n; j < n + m; ++j) {
        phase2(j) = 1e18;  // artificials must not re-enter
    }
    solve_phase(phase2, n);

    double value = 0.0;
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) {
            value += c(basis[i]) * t(i, n + m);
        }
    }
    return value;
}

double basis_pursuit_l1_lp(const Matrix& a, const Vector& y) {
    const int m = static_cast<int>(a.rows());
    const int d = static_cast<int>(a.cols());
    Matrix e(m, 2 * d);
    e.leftCols(d) = a;
    e.rightCols(d) = -a;
    return simplex_min(e, y, Vector::Ones(2 * d));
}

Matrix finite_difference(const std::function<double(const Matrix&)>& f,
                         const Matrix& at, double h) {
    Matrix grad(at.rows(), at.cols());
    Matrix work = at;
    for (int i = 0; i < at.rows(); ++i) {
        for (int j = 0; j < at.cols(); ++j) {
            const double orig = work(i, j);
            work(i, j) = orig + h;
            const double fp = f(work);
            work(i, j) = orig - h;
            const double fm = f(work);
            work(i, j) = orig;
            grad(i, j) = (fp - fm) / (2.0 * h);
        }
    }
    return grad;
}

Matrix randn(int rows, int cols, std::uint64_t seed) {
    csd::Rng rng(seed);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.gaussian(0.0, 1.0);
        }
    }
    return m;
}

Matrix randu(int rows, int cols, std::uint64_t seed) {
    csd::Rng rng(seed);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.uniform01();
        }
    }
    return m;
}

Matrix conditioned_factor(int d, double smin, double smax, std::uint64_t seed) {
    const Matrix q = Eigen::HouseholderQR<Matrix>(randn(d, d, seed))
                         .householderQ() *
                     Matrix::Identity(d, d);
    Vector sv(d);
    for (int i = 0; i < d; ++i) {
        sv(i) = smin + (smax - smin) * (d == 1 ? 0.0 : double(i) / (d - 1));
    }
    return sv.asDiagonal() * q.transpose();
}

}  // namespace oracle
