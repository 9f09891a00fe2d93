#pragma once

#include "csd/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace csd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitSolver = 4;

/// Optimizes one matrix per (criterion, m, seed) and writes
/// `<criterion>_m<m>_s<seed>.csmat` plus a loss-trace CSV per run into
/// config.output_dir. The pseudo-criterion "random" writes the unoptimized
/// random matrix (the baseline). Deterministic per config.
int run_design(const ExperimentConfig& config);

/// Ingests every PGM under train_dir, computes DCT-domain weights, and
/// writes a CSWGT file; prints the number of source patches.
int run_weights(const std::string& train_dir, int patch_side,
                const std::string& out_file);

/// Senses one image with a stored matrix and writes a CSMEAS file.
int run_sense(const std::string& image_path, const std::string& matrix_path,
              double sigma2, std::uint64_t seed, const std::string& out_path);

/// Recovers an image from a CSMEAS file. width/height (pixels) give the
/// block grid; when omitted the patches are laid out in a single row.
int run_recover(const std::string& meas_path, const std::string& matrix_path,
                double epsilon, int width, int height, int jobs,
                const std::string& out_pgm);

/// Full evaluation protocol: for every stored matrix x test image x seed,
/// sense, reconstruct at the per-matrix cross-validated epsilon, and score;
/// writes results.csv and an SSIM-vs-m SVG into config.output_dir.
/// matrix_files may be empty to scan output_dir for *.csmat.
int run_evaluate(const ExperimentConfig& config,
                 std::vector<std::string> matrix_files);

/// Prints mean and 99th percentile of ||theta||_1/||theta||_inf over
/// training patches plus a suggested s grid for the l1linf criterion.
int run_stats(const std::string& train_dir, int patch_side);

struct SparsityStats {
    std::size_t patches = 0;  // all-zero patches are skipped
    double mean = 0.0;        // mean of ||theta||_1 / ||theta||_inf
    double p99 = 0.0;         // 99th percentile (nearest rank)
};

/// ||theta||_1 / ||theta||_inf statistics of analysis coefficients; the
/// basis behind the `stats` subcommand and the s-grid suggestion.
SparsityStats sparsity_stats(const std::vector<Vector>& patches,
                             const Dictionary& psi);

/// Regenerates the SSIM-vs-m chart from an existing results.csv.
int run_plot(const std::string& results_csv, const std::string& out_svg);

/// Writes deterministic synthetic sample images (train/ and test/ subdirs).
int run_synth(const std::string& out_dir, int train_count, int test_count,
              int width, int height, std::uint64_t seed);

namespace benchdetail {

/// `<criterion>_m<m>_s<seed>` from design outputs; returns false when the
/// stem does not match (callers then treat the whole stem as the label).
bool parse_matrix_stem(const std::string& stem, std::string& criterion, int& m,
                       std::uint64_t& seed);

/// Sorted .pgm paths in a directory.
std::vector<std::string> list_pgm_files(const std::string& dir);

/// Deterministic seed mixing for independent noise streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace benchdetail

}  // namespace csd
