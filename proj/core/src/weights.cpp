#include "csd/weights.hpp"

namespace csd {

namespace {

// Pairwise tree over the patch list; deterministic and ordering-stable up
// to the usual fp reassociation.
Vector pairwise_abs_coeff_sum(const std::vector<Vector>& patches,
                              const Matrix& analysis, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo <= 16) {
        Vector acc = (analysis * patches[lo]).cwiseAbs();
        for (std::size_t i = lo + 1; i < hi; ++i) {
            acc += (analysis * patches[i]).cwiseAbs();
        }
        return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_abs_coeff_sum(patches, analysis, lo, mid) +
           pairwise_abs_coeff_sum(patches, analysis, mid, hi);
}

}  // namespace

WeightVector compute_weights(const std::vector<Vector>& patches,
                             const Dictionary& psi) {
    if (patches.empty()) {
        throw std::invalid_argument("compute_weights: empty patch list");
    }
    const int d = psi.dim();
    for (const Vector& x : patches) {
        if (x.size() != d) {
            throw std::invalid_argument("compute_weights: patch length mismatch");
        }
    }
    const Matrix analysis = psi.basis().transpose();
    WeightVector w;
    w.source_count = patches.size();
    w.values = pairwise_abs_coeff_sum(patches, analysis, 0, patches.size()) /
               static_cast<double>(patches.size());
    if (w.values.maxCoeff() <= 0.0) {
        w.values = Vector::Ones(d);
        w.uniform_fallback = true;
    }
    return w;
}

std::vector<Vector> extract_patches(const Image& image, int patch_side) {
    const int p = patch_side;
    if (p < 1) {
        throw std::invalid_argument("extract_patches: patch_side must be >= 1");
    }
    if (image.width < p || image.height < p) {
        throw std::invalid_argument("extract_patches: image smaller than one patch");
    }
    const int grid_cols = image.width / p;
    const int grid_rows = image.height / p;
    std::vector<Vector> patches;
    patches.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
    for (int br = 0; br < grid_rows; ++br) {
        for (int bc = 0; bc < grid_cols; ++bc) {
            Vector x(p * p);
            for (int r = 0; r < p; ++r) {
                for (int c = 0; c < p; ++c) {
                    x(r * p + c) = image.at(bc * p + c, br * p + r);
                }
            }
            patches.push_back(std::move(x));
        }
    }
    return patches;
}

}  // namespace csd
