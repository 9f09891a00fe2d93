#include "csd/pipeline.hpp"

#include "csd/dct.hpp"
#include "csd/gram.hpp"
#include "csd/parallel.hpp"
#include "csd/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csd {

MeasurementSet sense(const std::vector<Vector>& patches, const SensingMatrix& phi,
                     double sigma2, std::uint64_t seed) {
    if (sigma2 < 0.0) {
        throw std::invalid_argument("sense: sigma2 must be >= 0");
    }
    const int m = phi.rows();
    const int d = phi.cols();
    const double sigma = std::sqrt(sigma2);
    Rng rng(seed);

    MeasurementSet ms;
    ms.sigma2 = sigma2;
    ms.m = m;
    ms.grid_rows = 1;
    ms.grid_cols = static_cast<int>(patches.size());
    ms.measurements.reserve(patches.size());
    for (const Vector& x : patches) {
        if (x.size() != d) {
            throw std::invalid_argument("sense: patch length != phi.cols()");
        }
        Vector y = phi.entries() * x;
        if (sigma > 0.0) {
            for (int i = 0; i < m; ++i) {
                y(i) += rng.gaussian(0.0, sigma);
            }
        }
        ms.measurements.push_back(std::move(y));
    }
    return ms;
}

MeasurementSet sense_image(const Image& image, int patch_side,
                           const SensingMatrix& phi, double sigma2,
                           std::uint64_t seed) {
    MeasurementSet ms = sense(extract_patches(image, patch_side), phi, sigma2, seed);
    ms.grid_rows = image.height / patch_side;
    ms.grid_cols = image.width / patch_side;
    return ms;
}

Image assemble_patches(const std::vector<Vector>& patches, int grid_rows,
                       int grid_cols, int patch_side) {
    const int p = patch_side;
    if (grid_rows < 1 || grid_cols < 1 || p < 1) {
        throw std::invalid_argument("assemble_patches: bad grid");
    }
    if (patches.size() != static_cast<std::size_t>(grid_rows) * grid_cols) {
        throw std::invalid_argument("assemble_patches: patch count != grid size");
    }
    Image img(grid_cols * p, grid_rows * p);
    for (int br = 0; br < grid_rows; ++br) {
        for (int bc = 0; bc < grid_cols; ++bc) {
            const Vector& x = patches[static_cast<std::size_t>(br) * grid_cols + bc];
            if (x.size() != p * p) {
                throw std::invalid_argument("assemble_patches: patch length != p^2");
            }
            for (int r = 0; r < p; ++r) {
                for (int c = 0; c < p; ++c) {
                    img.at(bc * p + c, br * p + r) = x(r * p + c);
                }
            }
        }
    }
    return img;
}

Image reconstruct_image(const MeasurementSet& ms, const SensingMatrix& phi,
                        const Dictionary& psi, double epsilon,
                        const BpdnSettings& settings, int jobs,
                        ReconstructionStats* stats) {
    if (phi.cols() != psi.dim()) {
        throw std::invalid_argument("reconstruct_image: phi/psi dimension mismatch");
    }
    if (ms.m != phi.rows()) {
        throw std::invalid_argument("reconstruct_image: measurement length != phi rows");
    }
    const std::size_t count = ms.measurements.size();
    if (count != static_cast<std::size_t>(ms.grid_rows) * ms.grid_cols) {
        throw std::invalid_argument("reconstruct_image: grid/count mismatch");
    }
    const int p = static_cast<int>(std::lround(std::sqrt(double(psi.dim()))));
    if (p * p != psi.dim()) {
        throw std::invalid_argument("reconstruct_image: psi dimension is not a square");
    }

    const Matrix a = phi.entries() * psi.basis();
    std::vector<Vector> recovered(count);
    std::vector<unsigned char> nonconverged(count, 0);

    parallel_for(0, static_cast<int>(count), jobs, [&](int i) {
        BpdnResult res;
        try {
            res = solve_bpdn(a, ms.measurements[static_cast<std::size_t>(i)], epsilon,
                             settings);
        } catch (const std::exception& e) {
            throw std::runtime_error("reconstruct_image: patch " + std::to_string(i) +
                                     ": " + e.what());
        }
        if (res.status == BpdnStatus::NonConverged) {
            nonconverged[static_cast<std::size_t>(i)] = 1;
        }
        Vector x = psi.basis() * res.theta;
        for (int k = 0; k < x.size(); ++k) {
            x(k) = std::clamp(x(k), 0.0, 255.0);
        }
        recovered[static_cast<std::size_t>(i)] = std::move(x);
    });

    if (stats != nullptr) {
        stats->patches = static_cast<int>(count);
        stats->nonconverged = 0;
        for (unsigned char f : nonconverged) {
            stats->nonconverged += f;
        }
    }
    return assemble_patches(recovered, ms.grid_rows, ms.grid_cols, p);
}

namespace {

double patch_psnr(const Vector& reference, const Vector& test) {
    const double mse = (reference - test).squaredNorm() /
                       static_cast<double>(reference.size());
    if (mse == 0.0) {
        return 120.0;
    }
    return std::min(120.0, 10.0 * std::log10(255.0 * 255.0 / mse));
}

}  // namespace

const std::vector<double>& default_epsilon_grid() {
    static const std::vector<double> grid{0.6, 0.8, 1.0, 1.2, 1.5, 2.0};
    return grid;
}

double calibrate_epsilon(const SensingMatrix& phi, const Dictionary& psi,
                         const std::vector<Vector>& validation_patches,
                         double sigma2, const std::vector<double>& grid,
                         std::uint64_t seed, const BpdnSettings& settings,
                         int jobs, std::vector<double>* mean_psnrs) {
    if (validation_patches.empty()) {
        throw std::invalid_argument("calibrate_epsilon: empty validation set");
    }
    if (grid.empty()) {
        throw std::invalid_argument("calibrate_epsilon: empty grid");
    }
    const MeasurementSet ms = sense(validation_patches, phi, sigma2, seed);
    const Matrix a = phi.entries() * psi.basis();
    const double unit = std::sqrt(sigma2) * std::sqrt(double(phi.rows()));
    const std::size_t count = validation_patches.size();

    double best_eps = 0.0;
    double best_score = -1.0;
    if (mean_psnrs != nullptr) {
        mean_psnrs->clear();
    }
    std::vector<double> candidates = grid;
    std::sort(candidates.begin(), candidates.end());
    for (const double c : candidates) {
        const double eps = c * unit;
        std::vector<double> scores(count, 0.0);
        parallel_for(0, static_cast<int>(count), jobs, [&](int i) {
            const BpdnResult res =
                solve_bpdn(a, ms.measurements[static_cast<std::size_t>(i)], eps, settings);
            Vector x = psi.basis() * res.theta;
            for (int k = 0; k < x.size(); ++k) {
                x(k) = std::clamp(x(k), 0.0, 255.0);
            }
            scores[static_cast<std::size_t>(i)] =
                patch_psnr(validation_patches[static_cast<std::size_t>(i)], x);
        });
        const double mean = pairwise_sum(scores.data(), scores.size()) /
                            static_cast<double>(count);
        if (mean_psnrs != nullptr) {
            mean_psnrs->push_back(mean);
        }
        if (mean > best_score) {  // strict: ties keep the smaller epsilon
            best_score = mean;
            best_eps = eps;
        }
    }
    return best_eps;
}

}  // namespace csd
