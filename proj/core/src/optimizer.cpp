#include "csd/optimizer.hpp"

#include "csd/gram.hpp"
#include "csd/random.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace csd {

namespace {

// A tentative flip can make a criterion momentarily undefined (e.g. mu_max
// with a zeroed-out column); such flips are treated as non-improving.
double evaluate_or_reject(const CriterionSpec& spec, const GramState& state) {
    try {
        return evaluate(spec, state);
    } catch (const std::domain_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

FlipResult flip_optimize(const SensingMatrix& phi0, const Dictionary& psi,
                         const CriterionSpec& spec,
                         const FlipOptimizerConfig& cfg) {
    if (phi0.mode() != MatrixMode::Binary) {
        throw std::invalid_argument("flip_optimize: phi0 must be binary");
    }
    if (cfg.delta <= 0.0 || cfg.max_epochs < 1) {
        throw std::invalid_argument("flip_optimize: bad config");
    }
    spec.validate(phi0.cols());

    SensingMatrix phi = phi0;
    GramState state = build_gram(phi, psi);
    double current = evaluate(spec, state);

    FlipResult result{phi, {current}, 0, false, false};
    const int m = phi.rows();
    const int d = phi.cols();

    std::vector<int> order(static_cast<std::size_t>(m) * d);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(cfg.seed);

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        if (cfg.scan_order == ScanOrder::RandomPermutationPerEpoch) {
            std::iota(order.begin(), order.end(), 0);
            rng.shuffle(order);
        }
        int kept = 0;
        for (const int idx : order) {
            const int i = idx / d;
            const int j = idx % d;
            flip_update(state, phi, psi, i, j);
            const double candidate = evaluate_or_reject(spec, state);
            if (candidate > current) {
                current = candidate;
                ++kept;
            } else {
                flip_update(state, phi, psi, i, j);  // revert
            }
        }
        // Rebuild to bound incremental drift; the recorded trace always
        // comes from a freshly built state.
        state = build_gram(phi, psi);
        current = evaluate(spec, state);
        result.trace.push_back(current);
        result.epochs = epoch;

        const double gain = result.trace[epoch] - result.trace[epoch - 1];
        if (gain < cfg.delta) {
            result.reached_local_max = (kept == 0);
            break;
        }
        if (epoch == cfg.max_epochs) {
            result.hit_max_epochs = true;
        }
    }
    result.matrix = std::move(phi);
    return result;
}

bool is_single_flip_local_max(const SensingMatrix& phi, const Dictionary& psi,
                              const CriterionSpec& spec) {
    SensingMatrix work = phi;
    GramState state = build_gram(work, psi);
    const double base = evaluate(spec, state);
    for (int i = 0; i < work.rows(); ++i) {
        for (int j = 0; j < work.cols(); ++j) {
            flip_update(state, work, psi, i, j);
            const double candidate = evaluate_or_reject(spec, state);
            flip_update(state, work, psi, i, j);
            if (candidate > base) {
                return false;
            }
        }
    }
    return true;
}

SensingMatrix project_feasible(const SensingMatrix& phi, int rounds) {
    if (phi.mode() != MatrixMode::Continuous) {
        throw std::invalid_argument("project_feasible: phi must be continuous");
    }
    if (rounds < 1) {
        throw std::invalid_argument("project_feasible: rounds must be >= 1");
    }
    Matrix e = phi.entries();
    const int m = static_cast<int>(e.rows());
    const double uniform = 1.0 / std::sqrt(static_cast<double>(m));
    for (int r = 0; r < rounds; ++r) {
        e = e.cwiseMax(0.0).cwiseMin(1.0);
        for (int j = 0; j < e.cols(); ++j) {
            const double norm = e.col(j).norm();
            if (norm > 0.0) {
                e.col(j) /= norm;
            } else {
                e.col(j).setConstant(uniform);
            }
        }
    }
    e = e.cwiseMax(0.0).cwiseMin(1.0);  // final clip; norms stay within 1e-3
    return SensingMatrix(std::move(e), MatrixMode::Continuous);
}

namespace {

// dL/dA accumulated tuple by tuple. Each tuple contributes the normalized
// residual r(i,S)/G_ii, so with rho = A_i - A_S beta:
//   d/dA_i = 2 rho / G_ii - 2 r A_i / G_ii^2
//   d/dA_j = -2 beta_j rho / G_ii          (j in S)
Matrix loss_gradient_effective(const Matrix& a, const Matrix& g,
                               const CriterionSpec& spec) {
    const int d = static_cast<int>(a.cols());
    const WeightVector* weights = spec.weighted ? &*spec.weights : nullptr;
    int order = 0;
    switch (spec.kind) {
        case CriterionKind::Coherence:
            order = 1;
            break;
        case CriterionKind::BiCoherence:
            order = 2;
            break;
        case CriterionKind::TriCoherence:
            order = 3;
            break;
        default:
            throw std::invalid_argument(
                "loss_gradient: criterion has no closed-form gradient");
    }
    if (d < order + 1) {
        throw std::invalid_argument("loss_gradient: d too small for the order");
    }

    Vector wf = Vector::Ones(d);
    if (weights != nullptr) {
        for (int i = 0; i < d; ++i) {
            wf(i) = std::pow(weights->values(i), 1.0 / (order + 1));
        }
    }

    Matrix grad = Matrix::Zero(a.rows(), d);
    Vector rho(a.rows());
    double beta[3];
    int s[3];
    constexpr double kZeroGuard = 1e-12;

    auto accumulate = [&](int i, int r, double w) {
        const double gii = g(i, i);
        const double res = detail::gram_residual(g, i, s, r, beta);
        rho = a.col(i);
        for (int q = 0; q < r; ++q) {
            rho -= beta[q] * a.col(s[q]);
        }
        grad.col(i) += (2.0 * w / gii) * rho;
        grad.col(i) -= (2.0 * w * res / (gii * gii)) * a.col(i);
        for (int q = 0; q < r; ++q) {
            grad.col(s[q]) -= (2.0 * w * beta[q] / gii) * rho;
        }
    };

    if (order == 1) {
        for (int i = 0; i < d; ++i) {
            if (g(i, i) < kZeroGuard) continue;  // zero target: constant 0 term
            const int j_begin = spec.symmetrized ? 0 : i + 1;
            for (int j = j_begin; j < d; ++j) {
                if (j == i) continue;
                if (g(j, j) < kZeroGuard) continue;  // constant 1 term
                s[0] = j;
                accumulate(i, 1, wf(i) * wf(j));
            }
        }
    } else if (order == 2) {
        for (int i = 0; i < d; ++i) {
            if (g(i, i) < kZeroGuard) continue;
            const int j_begin = spec.symmetrized ? 0 : i + 1;
            for (int j = j_begin; j < d; ++j) {
                if (j == i) continue;
                for (int k = j + 1; k < d; ++k) {
                    if (spec.symmetrized && k == i) continue;
                    s[0] = j;
                    s[1] = k;
                    accumulate(i, 2, wf(i) * wf(j) * wf(k));
                }
            }
        }
    } else {
        for (int i = 0; i < d; ++i) {
            if (g(i, i) < kZeroGuard) continue;
            const int j_begin = spec.symmetrized ? 0 : i + 1;
            for (int j = j_begin; j < d; ++j) {
                if (j == i) continue;
                for (int k = j + 1; k < d; ++k) {
                    if (spec.symmetrized && k == i) continue;
                    for (int l = k + 1; l < d; ++l) {
                        if (spec.symmetrized && l == i) continue;
                        s[0] = j;
                        s[1] = k;
                        s[2] = l;
                        accumulate(i, 3, wf(i) * wf(j) * wf(k) * wf(l));
                    }
                }
            }
        }
    }
    return grad;
}

}  // namespace

Matrix loss_gradient_phi(const SensingMatrix& phi, const Dictionary& psi,
                         const CriterionSpec& spec) {
    spec.validate(phi.cols());
    const GramState state = build_gram(phi, psi);
    const Matrix grad_a = loss_gradient_effective(state.effective, state.gram, spec);
    return grad_a * psi.basis().transpose();
}

PgaResult pga_optimize(const SensingMatrix& phi0, const Dictionary& psi,
                       const CriterionSpec& spec, const PgaConfig& cfg) {
    if (phi0.mode() != MatrixMode::Continuous) {
        throw std::invalid_argument("pga_optimize: phi0 must be continuous");
    }
    if (spec.kind != CriterionKind::Coherence &&
        spec.kind != CriterionKind::BiCoherence &&
        spec.kind != CriterionKind::TriCoherence) {
        throw std::invalid_argument(
            "pga_optimize: criterion has no closed-form gradient");
    }
    if (cfg.step_size <= 0.0 || cfg.projection_rounds < 1 || cfg.max_iters < 1 ||
        cfg.grad_tolerance <= 0.0) {
        throw std::invalid_argument("pga_optimize: bad config");
    }
    spec.validate(phi0.cols());

    auto loss_of = [&](const SensingMatrix& p) {
        return evaluate(spec, build_gram(p, psi));
    };

    SensingMatrix phi = project_feasible(phi0, cfg.projection_rounds);
    double loss = loss_of(phi);
    PgaResult result{phi, {{0, loss, cfg.step_size}}, false};

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        const Matrix grad = loss_gradient_phi(phi, psi, spec);
        double step = cfg.step_size;
        SensingMatrix candidate = project_feasible(
            SensingMatrix((phi.entries() + step * grad)
                              .cwiseMax(0.0)
                              .cwiseMin(1.0),
                          MatrixMode::Continuous),
            cfg.projection_rounds);
        const double update =
            (candidate.entries() - phi.entries()).cwiseAbs().maxCoeff();
        if (update < cfg.grad_tolerance) {
            result.converged = true;
            break;
        }
        double cand_loss = loss_of(candidate);
        int halvings = 0;
        while (cand_loss <= loss && halvings < 20) {
            step *= 0.5;
            ++halvings;
            candidate = project_feasible(
                SensingMatrix((phi.entries() + step * grad)
                                  .cwiseMax(0.0)
                                  .cwiseMin(1.0),
                              MatrixMode::Continuous),
                cfg.projection_rounds);
            cand_loss = loss_of(candidate);
        }
        if (cand_loss <= loss) {
            result.converged = true;  // no improving step at any scale
            break;
        }
        phi = std::move(candidate);
        loss = cand_loss;
        result.trace.push_back({iter, loss, step});
    }
    result.matrix = std::move(phi);
    return result;
}

}  // namespace csd
