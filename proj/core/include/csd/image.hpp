#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace csd {

/// Grayscale raster, row-major, values in the native 8-bit range [0, 255]
/// (kept as doubles so reconstructions can hold intermediate values).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Reads a binary (P5) 8-bit PGM file.
Image read_pgm(const std::string& path);

/// Writes a binary (P5) 8-bit PGM file; values are clipped to [0,255] and
/// rounded to the nearest integer.
void write_pgm(const std::string& path, const Image& image);

/// Deterministic piecewise-smooth synthetic scene (soft gradients, disks,
/// rectangles, mild texture). Used for the bundled sample data and for
/// self-contained pipeline tests.
Image synth_image(int width, int height, std::uint64_t seed);

}  // namespace csd
