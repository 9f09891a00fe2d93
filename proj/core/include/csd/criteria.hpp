#pragma once

#include "csd/gram.hpp"
#include "csd/weights.hpp"

#include <optional>
#include <string>

namespace csd {

enum class CriterionKind { Coherence, BiCoherence, TriCoherence, L1Linf, MuMax, MuAvg };

/// One matrix quality measure plus its parameters.
///
/// The coherence family sums projection residuals over index tuples with
/// the target column at the smallest index (the literal summation; the
/// symmetrized every-column-vs-every-subset variant is available behind
/// `symmetrized` for experimentation). MuMax/MuAvg are evaluated negated so
/// that every criterion is maximized.
struct CriterionSpec {
    CriterionKind kind = CriterionKind::Coherence;
    bool weighted = false;
    std::optional<WeightVector> weights;
    std::optional<double> s;  // sparsity parameter, L1Linf only
    bool symmetrized = false;

    /// Throws std::invalid_argument when the spec is inconsistent for
    /// dimension d (missing/ill-sized weights, s out of (1, d], ...).
    void validate(int d) const;
};

/// The coherence family scores how poorly each column of A can be written
/// as a sparse combination of other columns. Residuals are evaluated on
/// unit-normalized columns (the convention under which the order-1 loss is
/// exactly C(d,2) minus the squared normalized overlaps, i.e. maximizing it
/// minimizes average coherence): the normalized residual is
/// res(i,S)/G_ii since spans are scale invariant. Without the
/// normalization a binary flip search inflates column norms instead of
/// separating directions. Zero-norm targets contribute 0; zero-norm
/// subset columns act as the zero projection.

/// Sum over pairs i<j of w_ij (1 - G_ij^2/(G_ii G_jj)); w_ij = sqrt(W_i W_j)
/// when weights are given.
double coherence_loss(const GramState& state, const WeightVector* weights = nullptr,
                      bool symmetrized = false);

/// Sum over triples i<j<k of w_ijk res(i, {j,k})/G_ii; w = (W_i W_j W_k)^(1/3).
double bicoherence_loss(const GramState& state, const WeightVector* weights = nullptr,
                        bool symmetrized = false);

/// Sum over quadruples i<j<k<l of w res(i, {j,k,l})/G_ii; w = (W_i..W_l)^(1/4).
double tricoherence_loss(const GramState& state, const WeightVector* weights = nullptr,
                         bool symmetrized = false);

/// max_{i != j} |G_ij| / sqrt(G_ii G_jj). Throws on a zero column.
double mu_max(const GramState& state);

/// Off-diagonal Frobenius norm of the column-normalized Gram.
double mu_avg(const GramState& state);

/// Upper-bound estimate of min ||G z||_2 / ||z||_inf over the cone
/// ||z||_1 / ||z||_inf <= s: for each pinned coordinate t the convex
/// subproblem (z_t = 1, box, l1-ball) is solved by projected gradient
/// descent, 500 iterations at step 1/sigma_max(G)^2, and the minimum over
/// t is returned. Deterministic given G and s.
double omega2(const GramState& state, double s);

/// Dispatch on spec.kind; MuMax/MuAvg come back negated so that larger is
/// always better for the optimizers.
double evaluate(const CriterionSpec& spec, const GramState& state);

/// CLI string for a spec: coherence, bicoherence, tricoherence, wcoherence,
/// wbicoherence, wtricoherence, l1linf, mumax, muavg.
std::string criterion_name(const CriterionSpec& spec);

/// Parses a CLI criterion string. Weighted names get `weighted` set; the
/// caller still has to attach the weight vector before evaluating.
CriterionSpec parse_criterion(const std::string& name);

}  // namespace csd
