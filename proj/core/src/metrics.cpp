#include "csd/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace csd {

double psnr(const Image& reference, const Image& test) {
    if (reference.width != test.width || reference.height != test.height) {
        throw std::invalid_argument("psnr: dimension mismatch");
    }
    if (reference.pixels.empty()) {
        throw std::invalid_argument("psnr: empty image");
    }
    double se = 0.0;
    for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
        const double diff = reference.pixels[i] - test.pixels[i];
        se += diff * diff;
    }
    const double mse = se / static_cast<double>(reference.pixels.size());
    if (mse == 0.0) {
        return 120.0;
    }
    return std::min(120.0, 10.0 * std::log10(255.0 * 255.0 / mse));
}

namespace {

constexpr int kWindow = 11;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> gaussian_kernel() {
    std::array<double, kWindow> k{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double x = i - (kWindow - 1) / 2.0;
        k[i] = std::exp(-x * x / (2.0 * sigma * sigma));
        sum += k[i];
    }
    for (double& v : k) {
        v /= sum;
    }
    return k;
}

// Separable valid-mode filtering: rows first, then columns.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::array<double, kWindow>& k, int& out_w,
                                 int& out_h) {
    out_w = w - kWindow + 1;
    out_h = h - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(out_w) * h, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int t = 0; t < kWindow; ++t) {
                acc += k[t] * src[static_cast<std::size_t>(y) * w + x + t];
            }
            rows[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(out_w) * out_h, 0.0);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int t = 0; t < kWindow; ++t) {
                acc += k[t] * rows[static_cast<std::size_t>(y + t) * out_w + x];
            }
            out[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
    }
    return out;
}

}  // namespace

double ssim(const Image& reference, const Image& test) {
    if (reference.width != test.width || reference.height != test.height) {
        throw std::invalid_argument("ssim: dimension mismatch");
    }
    if (reference.width < kWindow || reference.height < kWindow) {
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");
    }
    const int w = reference.width;
    const int h = reference.height;
    const auto kernel = gaussian_kernel();

    const std::size_t n = reference.pixels.size();
    std::vector<double> xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = reference.pixels[i];
        const double b = test.pixels[i];
        xx[i] = a * a;
        yy[i] = b * b;
        xy[i] = a * b;
    }

    int ow = 0;
    int oh = 0;
    const auto mu_x = filter_valid(reference.pixels, w, h, kernel, ow, oh);
    const auto mu_y = filter_valid(test.pixels, w, h, kernel, ow, oh);
    const auto e_xx = filter_valid(xx, w, h, kernel, ow, oh);
    const auto e_yy = filter_valid(yy, w, h, kernel, ow, oh);
    const auto e_xy = filter_valid(xy, w, h, kernel, ow, oh);

    double acc = 0.0;
    const std::size_t count = mu_x.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double var_x = e_xx[i] - mx * mx;
        const double var_y = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
        const double den = (mx * mx + my * my + kC1) * (var_x + var_y + kC2);
        acc += num / den;
    }
    return acc / static_cast<double>(count);
}

}  // namespace csd
