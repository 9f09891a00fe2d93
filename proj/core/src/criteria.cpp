#include "csd/criteria.hpp"

#include "csd/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace csd {

namespace {

constexpr double kZeroColumnGuard = 1e-12;

// Per-index weight factors so tuple weights become plain products:
// order r tuples use W_i^(1/(r+1)).
Vector weight_factors(const WeightVector* weights, int d, double exponent) {
    Vector v = Vector::Ones(d);
    if (weights != nullptr) {
        for (int i = 0; i < d; ++i) {
            v(i) = std::pow(weights->values(i), exponent);
        }
    }
    return v;
}

void check_weights(const WeightVector* weights, int d, const char* who) {
    if (weights == nullptr) {
        return;
    }
    if (weights->values.size() != d) {
        throw std::invalid_argument(std::string(who) + ": weight length mismatch");
    }
    bool any_positive = false;
    for (int i = 0; i < d; ++i) {
        const double w = weights->values(i);
        if (!(w >= 0.0)) {
            throw std::invalid_argument(std::string(who) + ": negative weight");
        }
        any_positive = any_positive || w > 0.0;
    }
    if (!any_positive) {
        throw std::invalid_argument(std::string(who) + ": all weights are zero");
    }
}

// Normalized pair residual 1 - G_ij^2/(G_ii G_jj) with the zero-column
// conventions: zero target -> 0, zero subset column -> zero projection.
double pair_term(const Matrix& g, const double* diag, int i, int j) {
    const double gii = diag[i];
    if (gii < kZeroColumnGuard) {
        return 0.0;
    }
    const double gjj = diag[j];
    if (gjj < kZeroColumnGuard) {
        return 1.0;
    }
    const double gij = g(i, j);
    return 1.0 - gij * gij / (gii * gjj);
}

}  // namespace

double coherence_loss(const GramState& state, const WeightVector* weights,
                      bool symmetrized) {
    const int d = state.dim();
    check_weights(weights, d, "coherence_loss");
    const Matrix& g = state.gram;
    const Vector diag = g.diagonal();
    const Vector wf = weight_factors(weights, d, 0.5);

    std::vector<double> partial(d, 0.0);
    for (int i = 0; i < d; ++i) {
        double sum = 0.0;
        if (symmetrized) {
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                sum += wf(i) * wf(j) * pair_term(g, diag.data(), i, j);
            }
        } else {
            for (int j = i + 1; j < d; ++j) {
                sum += wf(i) * wf(j) * pair_term(g, diag.data(), i, j);
            }
        }
        partial[i] = sum;
    }
    return pairwise_sum(partial.data(), partial.size());
}

double bicoherence_loss(const GramState& state, const WeightVector* weights,
                        bool symmetrized) {
    const int d = state.dim();
    if (d < 3) {
        throw std::invalid_argument("bicoherence_loss: requires d >= 3");
    }
    check_weights(weights, d, "bicoherence_loss");
    const Matrix& g = state.gram;
    const Vector wf = weight_factors(weights, d, 1.0 / 3.0);

    std::vector<double> partial(d, 0.0);
    for (int i = 0; i < d; ++i) {
        const double gii = g(i, i);
        if (gii < kZeroColumnGuard) {
            continue;  // zero target column contributes nothing
        }
        const double inv_gii = 1.0 / gii;
        double sum = 0.0;
        int s[2];
        if (symmetrized) {
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                for (int k = j + 1; k < d; ++k) {
                    if (k == i) continue;
                    s[0] = j;
                    s[1] = k;
                    sum += wf(i) * wf(j) * wf(k) *
                           (detail::gram_residual(g, i, s, 2) * inv_gii);
                }
            }
        } else {
            for (int j = i + 1; j < d; ++j) {
                for (int k = j + 1; k < d; ++k) {
                    s[0] = j;
                    s[1] = k;
                    sum += wf(i) * wf(j) * wf(k) *
                           (detail::gram_residual(g, i, s, 2) * inv_gii);
                }
            }
        }
        partial[i] = sum;
    }
    return pairwise_sum(partial.data(), partial.size());
}

double tricoherence_loss(const GramState& state, const WeightVector* weights,
                         bool symmetrized) {
    const int d = state.dim();
    if (d < 4) {
        throw std::invalid_argument("tricoherence_loss: requires d >= 4");
    }
    check_weights(weights, d, "tricoherence_loss");
    const Matrix& g = state.gram;
    const Vector wf = weight_factors(weights, d, 0.25);

    std::vector<double> partial(d, 0.0);
    for (int i = 0; i < d; ++i) {
        const double gii = g(i, i);
        if (gii < kZeroColumnGuard) {
            continue;
        }
        const double inv_gii = 1.0 / gii;
        double sum = 0.0;
        int s[3];
        if (symmetrized) {
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                for (int k = j + 1; k < d; ++k) {
                    if (k == i) continue;
                    for (int l = k + 1; l < d; ++l) {
                        if (l == i) continue;
                        s[0] = j;
                        s[1] = k;
                        s[2] = l;
                        sum += wf(i) * wf(j) * wf(k) * wf(l) *
                               (detail::gram_residual(g, i, s, 3) * inv_gii);
                    }
                }
            }
        } else {
            for (int j = i + 1; j < d; ++j) {
                for (int k = j + 1; k < d; ++k) {
                    for (int l = k + 1; l < d; ++l) {
                        s[0] = j;
                        s[1] = k;
                        s[2] = l;
                        sum += wf(i) * wf(j) * wf(k) * wf(l) *
                               (detail::gram_residual(g, i, s, 3) * inv_gii);
                    }
                }
            }
        }
        partial[i] = sum;
    }
    return pairwise_sum(partial.data(), partial.size());
}

namespace {

// Normalized off-diagonal Gram entry; throws on zero columns.
Vector checked_inv_norms(const GramState& state, const char* who) {
    const int d = state.dim();
    Vector inv(d);
    for (int i = 0; i < d; ++i) {
        const double gii = state.gram(i, i);
        if (!(gii > 0.0)) {
            throw std::domain_error(std::string(who) +
                                    ": zero column in effective matrix");
        }
        inv(i) = 1.0 / std::sqrt(gii);
    }
    return inv;
}

}  // namespace

double mu_max(const GramState& state) {
    const int d = state.dim();
    const Vector inv = checked_inv_norms(state, "mu_max");
    double best = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            best = std::max(best, std::abs(state.gram(i, j)) * inv(i) * inv(j));
        }
    }
    return best;
}

double mu_avg(const GramState& state) {
    const int d = state.dim();
    const Vector inv = checked_inv_norms(state, "mu_avg");
    std::vector<double> partial(d, 0.0);
    for (int j = 0; j < d; ++j) {
        double sum = 0.0;
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            const double v = state.gram(i, j) * inv(i) * inv(j);
            sum += v * v;
        }
        partial[j] = sum;
    }
    return std::sqrt(pairwise_sum(partial.data(), partial.size()));
}

namespace {

// Exact Euclidean projection onto {z : z_t = 1, |z_i| <= 1, ||z||_1 <= s}.
// The free coordinates are soft-thresholded-then-clipped with the shrinkage
// threshold found by bisection.
Vector project_pinned_cone(const Vector& v, int t, double s) {
    const int d = static_cast<int>(v.size());
    Vector z(d);
    double budget = s - 1.0;
    double l1 = 0.0;
    double vmax = 0.0;
    for (int i = 0; i < d; ++i) {
        if (i == t) continue;
        const double a = std::abs(v(i));
        l1 += std::min(a, 1.0);
        vmax = std::max(vmax, a);
    }
    double tau = 0.0;
    if (l1 > budget) {
        double lo = 0.0;
        double hi = vmax;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            double h = 0.0;
            for (int i = 0; i < d; ++i) {
                if (i == t) continue;
                h += std::min(std::max(std::abs(v(i)) - mid, 0.0), 1.0);
            }
            if (h > budget) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        tau = hi;
    }
    for (int i = 0; i < d; ++i) {
        if (i == t) {
            z(i) = 1.0;
            continue;
        }
        const double mag = std::min(std::max(std::abs(v(i)) - tau, 0.0), 1.0);
        z(i) = v(i) < 0.0 ? -mag : mag;
    }
    return z;
}

Vector pgd_pinned(const Matrix& g, double s, int t, Vector z0, double inv_l) {
    Vector z = project_pinned_cone(z0, t, s);
    for (int it = 0; it < 500; ++it) {
        const Vector grad = g * (g * z);
        Vector next = project_pinned_cone(z - inv_l * grad, t, s);
        const double move = (next - z).lpNorm<Eigen::Infinity>();
        z = std::move(next);
        if (move < 1e-14) {
            break;
        }
    }
    return z;
}

}  // namespace

double omega2(const GramState& state, double s) {
    const int d = state.dim();
    if (!(s > 1.0) || !(s <= static_cast<double>(d))) {
        throw std::invalid_argument("omega2: requires 1 < s <= d");
    }
    const Matrix& g = state.gram;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (!(lmax > 0.0)) {
        return 0.0;
    }
    const double inv_l = 1.0 / (lmax * lmax);
    const Vector diag = g.diagonal();

    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < d; ++t) {
        Vector z0 = Vector::Zero(d);
        z0(t) = 1.0;
        best = std::min(best, (g * pgd_pinned(g, s, t, z0, inv_l)).norm());

        // Second start: cancel against the most correlated other column.
        // This lands exactly on the minimizer for duplicated columns.
        int jhat = -1;
        double cmax = -1.0;
        for (int j = 0; j < d; ++j) {
            if (j == t) continue;
            const double denom =
                std::sqrt(std::max(diag(j), 1e-300) * std::max(diag(t), 1e-300));
            const double c = std::abs(g(t, j)) / denom;
            if (c > cmax) {
                cmax = c;
                jhat = j;
            }
        }
        if (jhat >= 0 && g(t, jhat) != 0.0) {
            Vector z1 = Vector::Zero(d);
            z1(t) = 1.0;
            z1(jhat) = (g(t, jhat) > 0.0 ? -1.0 : 1.0) * std::min(1.0, s - 1.0);
            best = std::min(best, (g * pgd_pinned(g, s, t, z1, inv_l)).norm());
        }
    }
    return best;
}

void CriterionSpec::validate(int d) const {
    if (weighted) {
        if (kind != CriterionKind::Coherence && kind != CriterionKind::BiCoherence &&
            kind != CriterionKind::TriCoherence) {
            throw std::invalid_argument(
                "CriterionSpec: weighted applies to the coherence family only");
        }
        if (!weights.has_value()) {
            throw std::invalid_argument("CriterionSpec: weighted but no weights");
        }
        check_weights(&*weights, d, "CriterionSpec");
    }
    if (kind == CriterionKind::L1Linf) {
        if (!s.has_value()) {
            throw std::invalid_argument("CriterionSpec: l1linf requires s");
        }
        if (!(*s > 1.0) || !(*s <= static_cast<double>(d))) {
            throw std::invalid_argument("CriterionSpec: s must satisfy 1 < s <= d");
        }
    }
}

double evaluate(const CriterionSpec& spec, const GramState& state) {
    spec.validate(state.dim());
    const WeightVector* w = spec.weighted ? &*spec.weights : nullptr;
    switch (spec.kind) {
        case CriterionKind::Coherence:
            return coherence_loss(state, w, spec.symmetrized);
        case CriterionKind::BiCoherence:
            return bicoherence_loss(state, w, spec.symmetrized);
        case CriterionKind::TriCoherence:
            return tricoherence_loss(state, w, spec.symmetrized);
        case CriterionKind::L1Linf:
            return omega2(state, *spec.s);
        case CriterionKind::MuMax:
            return -mu_max(state);
        case CriterionKind::MuAvg:
            return -mu_avg(state);
    }
    throw std::logic_error("evaluate: unknown criterion kind");
}

std::string criterion_name(const CriterionSpec& spec) {
    switch (spec.kind) {
        case CriterionKind::Coherence:
            return spec.weighted ? "wcoherence" : "coherence";
        case CriterionKind::BiCoherence:
            return spec.weighted ? "wbicoherence" : "bicoherence";
        case CriterionKind::TriCoherence:
            return spec.weighted ? "wtricoherence" : "tricoherence";
        case CriterionKind::L1Linf:
            return "l1linf";
        case CriterionKind::MuMax:
            return "mumax";
        case CriterionKind::MuAvg:
            return "muavg";
    }
    return "unknown";
}

CriterionSpec parse_criterion(const std::string& name) {
    CriterionSpec spec;
    if (name == "coherence") {
        spec.kind = CriterionKind::Coherence;
    } else if (name == "bicoherence") {
        spec.kind = CriterionKind::BiCoherence;
    } else if (name == "tricoherence") {
        spec.kind = CriterionKind::TriCoherence;
    } else if (name == "wcoherence") {
        spec.kind = CriterionKind::Coherence;
        spec.weighted = true;
    } else if (name == "wbicoherence") {
        spec.kind = CriterionKind::BiCoherence;
        spec.weighted = true;
    } else if (name == "wtricoherence") {
        spec.kind = CriterionKind::TriCoherence;
        spec.weighted = true;
    } else if (name == "l1linf") {
        spec.kind = CriterionKind::L1Linf;
        spec.s = 2.0;
    } else if (name == "mumax") {
        spec.kind = CriterionKind::MuMax;
    } else if (name == "muavg") {
        spec.kind = CriterionKind::MuAvg;
    } else {
        throw std::invalid_argument("unknown criterion: " + name);
    }
    return spec;
}

}  // namespace csd
