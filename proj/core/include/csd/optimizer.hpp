#pragma once

#include "csd/criteria.hpp"

#include <cstdint>
#include <vector>

namespace csd {

enum class ScanOrder { RowMajor, RandomPermutationPerEpoch };

struct FlipOptimizerConfig {
    double delta = 1e-3;   // epoch-improvement convergence threshold
    int max_epochs = 50;
    std::uint64_t seed = 0;
    ScanOrder scan_order = ScanOrder::RowMajor;
};

struct FlipResult {
    SensingMatrix matrix;
    std::vector<double> trace;     // objective at init and after each epoch
    int epochs = 0;
    bool reached_local_max = false;  // final epoch kept zero flips
    bool hit_max_epochs = false;
};

/// Coordinate-flip maximization of evaluate(spec, .) over binary matrices.
///
/// Visits every entry once per epoch in cfg.scan_order, keeps a flip only
/// on strict improvement (ties revert), and stops once the epoch-over-epoch
/// gain drops below cfg.delta or max_epochs is hit. Losses inside the loop
/// come from the O(d^2) incremental Gram update; the Gram cache is rebuilt
/// from scratch at every epoch boundary to bound fp drift. Deterministic
/// given (phi0, spec, cfg).
FlipResult flip_optimize(const SensingMatrix& phi0, const Dictionary& psi,
                         const CriterionSpec& spec, const FlipOptimizerConfig& cfg);

/// One verification sweep: true iff no single flip strictly improves the
/// objective.
bool is_single_flip_local_max(const SensingMatrix& phi, const Dictionary& psi,
                              const CriterionSpec& spec);

struct PgaConfig {
    double step_size = 1e-3;
    int max_iters = 200;
    int projection_rounds = 25;
    double grad_tolerance = 1e-7;  // stop when ||projected update||_max is below
    std::uint64_t seed = 0;
};

struct PgaTracePoint {
    int iter;
    double loss;
    double step;
};

struct PgaResult {
    SensingMatrix matrix;
    std::vector<PgaTracePoint> trace;
    bool converged = false;
};

/// Projected gradient ascent for continuous matrices over the coherence
/// family (closed-form gradients; other criteria are rejected). Each
/// iteration backtracks the step (up to 20 halvings) whenever the projected
/// step would decrease the loss, so the trace is nondecreasing.
PgaResult pga_optimize(const SensingMatrix& phi0, const Dictionary& psi,
                       const CriterionSpec& spec, const PgaConfig& cfg);

/// Alternating clip-to-[0,1] / column-normalize passes; all-zero columns
/// are reset to the uniform feasible column 1/sqrt(m). Output entries are
/// exactly in [0,1] with column norms within 1e-3 of 1.
SensingMatrix project_feasible(const SensingMatrix& phi, int rounds);

/// Analytic d L(Phi Psi) / d Phi for the coherence family; exposed so the
/// gradient can be checked against finite differences.
Matrix loss_gradient_phi(const SensingMatrix& phi, const Dictionary& psi,
                         const CriterionSpec& spec);

}  // namespace csd
