#include "csd/image.hpp"

#include "csd/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace csd {

namespace {

// Skips whitespace and '#' comment lines between PGM header tokens.
std::string next_token(std::istream& in) {
    std::string tok;
    for (;;) {
        const int c = in.peek();
        if (c == EOF) {
            throw std::runtime_error("read_pgm: truncated header");
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        break;
    }
    in >> tok;
    return tok;
}

}  // namespace

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("read_pgm: cannot open " + path);
    }
    if (next_token(in) != "P5") {
        throw std::runtime_error("read_pgm: not a binary PGM (P5): " + path);
    }
    const int width = std::stoi(next_token(in));
    const int height = std::stoi(next_token(in));
    const int maxval = std::stoi(next_token(in));
    if (width < 1 || height < 1 || maxval != 255) {
        throw std::runtime_error("read_pgm: unsupported dimensions/maxval in " + path);
    }
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw std::runtime_error("read_pgm: truncated pixel data in " + path);
    }
    Image img(width, height);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        img.pixels[i] = static_cast<double>(raw[i]);
    }
    return img;
}

void write_pgm(const std::string& path, const Image& image) {
    if (image.width < 1 || image.height < 1) {
        throw std::invalid_argument("write_pgm: empty image");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_pgm: cannot open " + path);
    }
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.pixels.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = std::clamp(image.pixels[i], 0.0, 255.0);
        raw[i] = static_cast<unsigned char>(std::lround(v));
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw std::runtime_error("write_pgm: write failed for " + path);
    }
}

namespace {

// Bilinearly interpolated seeded lattice noise; one octave of smooth
// deterministic texture.
class ValueNoise {
public:
    ValueNoise(int cells_x, int cells_y, Rng& rng)
        : cx_(cells_x), cy_(cells_y), grid_((cells_x + 1) * (cells_y + 1)) {
        for (double& g : grid_) {
            g = rng.uniform01() * 2.0 - 1.0;
        }
    }

    double at(double u, double v) const {  // u, v in [0,1]
        const double gx = u * cx_;
        const double gy = v * cy_;
        const int x0 = std::min(static_cast<int>(gx), cx_ - 1);
        const int y0 = std::min(static_cast<int>(gy), cy_ - 1);
        const double fx = gx - x0;
        const double fy = gy - y0;
        auto g = [&](int x, int y) { return grid_[y * (cx_ + 1) + x]; };
        const double top = g(x0, y0) * (1 - fx) + g(x0 + 1, y0) * fx;
        const double bot = g(x0, y0 + 1) * (1 - fx) + g(x0 + 1, y0 + 1) * fx;
        return top * (1 - fy) + bot * fy;
    }

private:
    int cx_;
    int cy_;
    std::vector<double> grid_;
};

}  // namespace

Image synth_image(int width, int height, std::uint64_t seed) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("synth_image: bad dimensions");
    }
    Rng rng(seed);
    Image img(width, height);

    // Smooth background gradient.
    const double gx = rng.uniform01() * 2.0 - 1.0;
    const double gy = rng.uniform01() * 2.0 - 1.0;
    const double base = 70.0 + 110.0 * rng.uniform01();
    const double amp = 25.0 + 40.0 * rng.uniform01();

    // Multi-scale sinusoid field with roughly 1/f amplitudes, so patches
    // carry energy across the spectrum the way photographs do.
    struct Wave {
        double fx, fy, phase, amp;
    };
    std::vector<Wave> waves;
    const int wave_count = 22;
    for (int k = 0; k < wave_count; ++k) {
        const double freq = 1.0 + 35.0 * rng.uniform01();  // cycles per image
        const double angle = rng.uniform01() * 2.0 * M_PI;
        waves.push_back({freq * std::cos(angle), freq * std::sin(angle),
                         rng.uniform01() * 2.0 * M_PI,
                         (16.0 + 9.0 * rng.uniform01()) / std::sqrt(freq)});
    }

    // Two octaves of lattice noise for cloudy midscale texture.
    ValueNoise coarse(4 + static_cast<int>(rng.uniform_below(3)),
                      4 + static_cast<int>(rng.uniform_below(3)), rng);
    ValueNoise fine(13 + static_cast<int>(rng.uniform_below(8)),
                    13 + static_cast<int>(rng.uniform_below(8)), rng);
    ValueNoise grain(27 + static_cast<int>(rng.uniform_below(10)),
                     27 + static_cast<int>(rng.uniform_below(10)), rng);
    const double coarse_amp = 12.0 + 7.0 * rng.uniform01();
    const double fine_amp = 6.5 + 4.0 * rng.uniform01();
    const double grain_amp = 3.0 + 2.5 * rng.uniform01();

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / width;
            const double v = static_cast<double>(y) / height;
            double val = base + amp * (gx * u + gy * v);
            for (const Wave& w : waves) {
                val += w.amp * std::sin(2.0 * M_PI * (w.fx * u + w.fy * v) + w.phase);
            }
            val += coarse_amp * coarse.at(u, v) + fine_amp * fine.at(u, v) +
                   grain_amp * grain.at(u, v);
            img.at(x, y) = val;
        }
    }

    // Soft-edged disks with textured fills (region contrast + edges).
    const int disks = 2 + static_cast<int>(rng.uniform_below(3));
    for (int k = 0; k < disks; ++k) {
        const double cx = rng.uniform01() * width;
        const double cy = rng.uniform01() * height;
        const double rad = (0.10 + 0.20 * rng.uniform01()) * std::min(width, height);
        const double level = 30.0 + 195.0 * rng.uniform01();
        const double tex_f = 6.0 + 14.0 * rng.uniform01();
        const double tex_a = 6.0 + 10.0 * rng.uniform01();
        const double tex_p = rng.uniform01() * 2.0 * M_PI;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const double dist = std::hypot(x - cx, y - cy);
                const double t = std::clamp((rad - dist) / 1.5, 0.0, 1.0);
                if (t > 0.0) {
                    const double fill =
                        level + tex_a * std::sin(2.0 * M_PI * tex_f * (x + 2.0 * y) /
                                                     width +
                                                 tex_p);
                    img.at(x, y) = (1.0 - 0.8 * t) * img.at(x, y) + 0.8 * t * fill;
                }
            }
        }
    }

    // Axis-aligned rectangles with hard edges.
    const int rects = 1 + static_cast<int>(rng.uniform_below(3));
    for (int k = 0; k < rects; ++k) {
        const int x0 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(width)));
        const int y0 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(height)));
        const int w = 6 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(width / 2 + 1)));
        const int h = 6 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(height / 2 + 1)));
        const double level = 20.0 + 215.0 * rng.uniform01();
        for (int y = y0; y < std::min(height, y0 + h); ++y) {
            for (int x = x0; x < std::min(width, x0 + w); ++x) {
                img.at(x, y) = 0.65 * level + 0.35 * img.at(x, y);
            }
        }
    }

    for (double& px : img.pixels) {
        px = std::clamp(px, 0.0, 255.0);
    }
    return img;
}

}  // namespace csd
