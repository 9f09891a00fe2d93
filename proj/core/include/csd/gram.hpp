#pragma once

#include "csd/types.hpp"

#include <span>

namespace csd {

/// Effective matrix A = Phi * Psi with its cached Gram G = A^T A.
///
/// All coherence criteria are functions of G entries alone; A is kept so
/// that single-entry flips of Phi update both in O(d^2).
struct GramState {
    Matrix effective;  // m x d
    Matrix gram;       // d x d, symmetric PSD

    int dim() const { return static_cast<int>(gram.rows()); }
};

/// Dense construction: effective = Phi * Psi, gram = effective^T * effective.
GramState build_gram(const SensingMatrix& phi, const Dictionary& psi);

/// Applies the binary flip Phi(row, col) := 1 - Phi(row, col) and updates
/// state in place: row `row` of A gains delta * (row `col` of Psi) and G
/// gets the matching symmetric rank-<=2 correction. O(d^2).
void flip_update(GramState& state, SensingMatrix& phi, const Dictionary& psi,
                 int row, int col);

/// Squared residual of projecting column A_target onto span{A_j : j in subset},
/// computed from Gram entries with explicit 1x1/2x2/3x3 inverses:
///   res = G_tt - g^T (G_SS)^-1 g,  g = (G_jt : j in S).
/// Near-singular G_SS falls back to a truncated eigen pseudo-inverse.
/// Slightly negative round-off results are clamped to 0.
/// subset must have 1..3 distinct in-range indices not containing target.
double small_inverse_residual(const GramState& state, int target,
                              std::span<const int> subset);

namespace detail {

/// Residual core shared by criteria sums and gradients; no validation.
/// If beta_out is non-null it receives the projection coefficients
/// (G_SS)^-1 g (or the pseudo-inverse solution on the fallback path).
double gram_residual(const Matrix& gram, int target, const int* subset, int r,
                     double* beta_out = nullptr);

}  // namespace detail

}  // namespace csd
