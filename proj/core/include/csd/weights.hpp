#pragma once

#include "csd/image.hpp"
#include "csd/types.hpp"

namespace csd {

/// Per-frequency importance weights learned from training patches.
struct WeightVector {
    Vector values;                  // length d, all >= 0, at least one > 0
    std::size_t source_count = 0;   // training patches the weights came from
    bool uniform_fallback = false;  // set when a degenerate set forced W = 1
};

/// W_l = mean over patches of |(Psi^T x)_l|. A degenerate all-zero training
/// set yields uniform weights with uniform_fallback set. The mean uses a
/// pairwise reduction over the patch list.
WeightVector compute_weights(const std::vector<Vector>& patches,
                             const Dictionary& psi);

/// Non-overlapping patch_side x patch_side blocks in row-major block order,
/// each vectorized row-major; trailing partial blocks are discarded. Pixel
/// values stay in the native [0,255] scale.
std::vector<Vector> extract_patches(const Image& image, int patch_side);

}  // namespace csd
