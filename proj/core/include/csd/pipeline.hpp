#pragma once

#include "csd/bpdn.hpp"
#include "csd/image.hpp"
#include "csd/types.hpp"
#include "csd/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace csd {

/// Per-block compressive measurements y_i = Phi x_i + eta_i.
struct MeasurementSet {
    std::vector<Vector> measurements;  // one m-vector per patch
    double sigma2 = 0.0;               // noise variance (pixel-intensity^2)
    std::string phi_ref;               // identifier of the sensing matrix used
    int grid_rows = 0;                 // block grid of the source image
    int grid_cols = 0;
    int m = 0;
};

/// Measures each patch with i.i.d. N(0, sigma2) noise from a seeded stream
/// (patch order fixes the stream, so runs are reproducible per seed). The
/// block grid is recorded as a single row; use sense_image for rasters.
MeasurementSet sense(const std::vector<Vector>& patches, const SensingMatrix& phi,
                     double sigma2, std::uint64_t seed);

/// extract_patches + sense with the real block grid filled in.
MeasurementSet sense_image(const Image& image, int patch_side,
                           const SensingMatrix& phi, double sigma2,
                           std::uint64_t seed);

/// Inverse of extract_patches for dimensions divisible by patch_side.
Image assemble_patches(const std::vector<Vector>& patches, int grid_rows,
                       int grid_cols, int patch_side);

struct ReconstructionStats {
    int patches = 0;
    int nonconverged = 0;
};

/// Per-patch BPDN recovery: theta_i solves min l1 s.t. ||y_i - A theta|| <= eps,
/// x_i = Psi theta_i clipped to [0,255], blocks reassembled in patch order.
/// Patches are solved in parallel (jobs <= 0 selects the hardware default);
/// output ordering does not depend on scheduling. Solver errors carry the
/// patch index; NonConverged solves are counted in stats and kept.
Image reconstruct_image(const MeasurementSet& ms, const SensingMatrix& phi,
                        const Dictionary& psi, double epsilon,
                        const BpdnSettings& settings = {}, int jobs = 1,
                        ReconstructionStats* stats = nullptr);

/// Picks epsilon = c * sigma * sqrt(m) over the multiplier grid by mean
/// patch PSNR on a held-out validation set (sensed once with `seed`); ties
/// break toward the smaller epsilon. mean_psnrs, when given, receives the
/// per-candidate scores.
double calibrate_epsilon(const SensingMatrix& phi, const Dictionary& psi,
                         const std::vector<Vector>& validation_patches,
                         double sigma2, const std::vector<double>& grid,
                         std::uint64_t seed, const BpdnSettings& settings = {},
                         int jobs = 1, std::vector<double>* mean_psnrs = nullptr);

/// Default epsilon multiplier grid.
const std::vector<double>& default_epsilon_grid();

}  // namespace csd
