// Independent reference implementations used to pin expected values.
// Everything here works from the effective matrix A with dense least
// squares or exhaustive search, never through the Gram shortcut paths
// being tested.
#pragma once

#include "csd/types.hpp"
#include "csd/weights.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using csd::Matrix;
using csd::Vector;

/// min_alpha || A_i - A_S alpha ||^2 via dense QR least squares.
double residual_lstsq(const Matrix& a, int target, const std::vector<int>& subset);

/// Brute-force loss sums straight from the definition (columns unit
/// normalized, then per-tuple dense least squares). weights == nullptr
/// means unweighted.
double coherence_loss(const Matrix& a, const csd::WeightVector* weights = nullptr);
double bicoherence_loss(const Matrix& a, const csd::WeightVector* weights = nullptr);
double tricoherence_loss(const Matrix& a, const csd::WeightVector* weights = nullptr);

double mu_max(const Matrix& a);
double mu_avg(const Matrix& a);

/// Grid search for omega2: z ranges over {-1,-0.9,...,1}^d restricted to
/// the cone ||z||_1/||z||_inf <= s; returns min ||G z||_2 / ||z||_inf.
double omega2_grid(const Matrix& gram, double s);

/// Two-phase dense simplex for min c^T x s.t. E x = b, x >= 0 (Bland's
/// rule). Throws on infeasible/unbounded problems.
double simplex_min(const Matrix& e, const Vector& b, const Vector& c);

/// l1-minimal solution value of A theta = y via the LP reformulation
/// theta = u - v, u,v >= 0 solved by simplex_min.
double basis_pursuit_l1_lp(const Matrix& a, const Vector& y);

/// Central finite differences of a scalar function of a matrix.
Matrix finite_difference(const std::function<double(const Matrix&)>& f,
                         const Matrix& at, double h);

/// Seeded Gaussian test matrix (entries N(0,1)).
Matrix randn(int rows, int cols, std::uint64_t seed);

/// Seeded U(0,1) test matrix.
Matrix randu(int rows, int cols, std::uint64_t seed);

/// d x d factor A with prescribed singular values evenly spaced in
/// [smin, smax] and a random orthogonal column frame, so A^T A has a
/// controlled spectrum. Used where a fixed-budget solver needs honestly
/// resolvable instances.
Matrix conditioned_factor(int d, double smin, double smax, std::uint64_t seed);

}  // namespace oracle
