#pragma once

#include "csd/image.hpp"

#include <string>

namespace csd {

struct QualityReport {
    double psnr_db = 0.0;
    double ssim = 0.0;
    std::string image_id;
};

/// 10 log10(255^2 / MSE) against an 8-bit reference; identical images are
/// capped at 120 dB.
double psnr(const Image& reference, const Image& test);

/// Mean local SSIM with the standard 11x11 Gaussian window (sigma = 1.5),
/// C1 = (0.01*255)^2, C2 = (0.03*255)^2, evaluated at valid window
/// positions. Requires both dimensions >= 11.
double ssim(const Image& reference, const Image& test);

}  // namespace csd
