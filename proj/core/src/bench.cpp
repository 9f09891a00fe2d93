#include "csd/bench.hpp"

#include "csd/criteria.hpp"
#include "csd/dct.hpp"
#include "csd/io.hpp"
#include "csd/metrics.hpp"
#include "csd/parallel.hpp"
#include "csd/pipeline.hpp"
#include "csd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace csd {

namespace benchdetail {

bool parse_matrix_stem(const std::string& stem, std::string& criterion, int& m,
                       std::uint64_t& seed) {
    const std::size_t spos = stem.rfind("_s");
    const std::size_t mpos = stem.rfind("_m", spos == std::string::npos
                                                  ? std::string::npos
                                                  : spos - 1);
    if (spos == std::string::npos || mpos == std::string::npos || mpos == 0) {
        return false;
    }
    try {
        m = std::stoi(stem.substr(mpos + 2, spos - mpos - 2));
        seed = std::stoull(stem.substr(spos + 2));
    } catch (const std::exception&) {
        return false;
    }
    criterion = stem.substr(0, mpos);
    return !criterion.empty();
}

std::vector<std::string> list_pgm_files(const std::string& dir) {
    std::vector<std::string> files;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir);
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined words
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

}  // namespace benchdetail

namespace {

using benchdetail::list_pgm_files;
using benchdetail::mix_seed;
using benchdetail::parse_matrix_stem;

std::vector<Vector> load_training_patches(const std::string& train_dir, int p) {
    const auto files = list_pgm_files(train_dir);
    if (files.empty()) {
        throw std::runtime_error("no .pgm images in " + train_dir);
    }
    std::vector<Vector> patches;
    for (const auto& f : files) {
        auto chunk = extract_patches(read_pgm(f), p);
        patches.insert(patches.end(), std::make_move_iterator(chunk.begin()),
                       std::make_move_iterator(chunk.end()));
    }
    return patches;
}

// Deterministic subsample used for epsilon cross-validation.
std::vector<Vector> subsample_patches(const std::vector<Vector>& patches,
                                      std::size_t limit) {
    if (patches.size() <= limit) {
        return patches;
    }
    std::vector<Vector> out;
    out.reserve(limit);
    const double stride = static_cast<double>(patches.size()) / static_cast<double>(limit);
    for (std::size_t k = 0; k < limit; ++k) {
        out.push_back(patches[static_cast<std::size_t>(k * stride)]);
    }
    return out;
}

WeightVector resolve_weights(const ExperimentConfig& config, int d) {
    if (!config.weights_file.empty()) {
        WeightVector w = read_cswgt(config.weights_file);
        if (w.values.size() != d) {
            throw std::runtime_error("weights file dimension != patch_side^2");
        }
        return w;
    }
    if (config.train_dir.empty()) {
        throw ConfigError(
            "weighted criteria need weights_file or train_dir in the config");
    }
    return compute_weights(load_training_patches(config.train_dir, config.patch_side),
                           dct_dictionary(config.patch_side));
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

struct ResultRow {
    std::string criterion;
    int m = 0;
    std::uint64_t seed = 0;
    std::string image;
    double psnr = 0.0;
    double ssim = 0.0;
};

Image crop(const Image& img, int w, int h) {
    Image out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out.at(x, y) = img.at(x, y);
        }
    }
    return out;
}

}  // namespace

int run_design(const ExperimentConfig& config) {
    config.validate();
    if (config.output_dir.empty()) {
        throw ConfigError("design: output_dir is required");
    }
    fs::create_directories(config.output_dir);
    const int p = config.patch_side;
    const int d = p * p;
    const Dictionary psi = dct_dictionary(p);

    bool any_weighted = false;
    for (const auto& name : config.criteria) {
        if (name != "random" && parse_criterion(name).weighted) {
            any_weighted = true;
        }
    }
    std::optional<WeightVector> weights;
    if (any_weighted) {
        weights = resolve_weights(config, d);
    }

    for (const auto& name : config.criteria) {
        for (const int m : config.measurement_counts) {
            for (const std::uint64_t seed : config.seeds) {
                const std::string stem = name + "_m" + std::to_string(m) + "_s" +
                                         std::to_string(seed);
                const fs::path mat_path = fs::path(config.output_dir) / (stem + ".csmat");
                const fs::path trace_path =
                    fs::path(config.output_dir) / (stem + "_trace.csv");

                if (config.matrix_mode == MatrixMode::Binary) {
                    SensingMatrix phi0 = random_binary(m, d, seed);
                    if (name == "random") {
                        write_csmat(mat_path.string(), phi0);
                        write_flip_trace_csv(trace_path.string(), {});
                        continue;
                    }
                    CriterionSpec spec = parse_criterion(name);
                    if (spec.weighted) {
                        spec.weights = weights;
                    }
                    if (spec.kind == CriterionKind::L1Linf) {
                        spec.s = config.l1linf_s;
                    }
                    FlipOptimizerConfig fcfg;
                    fcfg.delta = config.delta;
                    fcfg.max_epochs = config.max_epochs;
                    fcfg.seed = seed;
                    fcfg.scan_order = config.scan_order;
                    const FlipResult res = flip_optimize(phi0, psi, spec, fcfg);
                    write_csmat(mat_path.string(), res.matrix);
                    write_flip_trace_csv(trace_path.string(), res.trace);
                } else {
                    SensingMatrix phi0 = random_continuous(m, d, seed);
                    if (name == "random") {
                        write_csmat(mat_path.string(), phi0);
                        write_pga_trace_csv(trace_path.string(), {});
                        continue;
                    }
                    CriterionSpec spec = parse_criterion(name);
                    if (spec.weighted) {
                        spec.weights = weights;
                    }
                    if (spec.kind != CriterionKind::Coherence &&
                        spec.kind != CriterionKind::BiCoherence &&
                        spec.kind != CriterionKind::TriCoherence) {
                        throw ConfigError("criterion '" + name +
                                          "' cannot be optimized in continuous mode");
                    }
                    PgaConfig pcfg;
                    pcfg.step_size = config.pga_step;
                    pcfg.max_iters = config.pga_max_iters;
                    pcfg.seed = seed;
                    const PgaResult res = pga_optimize(phi0, psi, spec, pcfg);
                    write_csmat(mat_path.string(), res.matrix);
                    write_pga_trace_csv(trace_path.string(), res.trace);
                }
            }
        }
    }
    return kExitOk;
}

int run_weights(const std::string& train_dir, int patch_side,
                const std::string& out_file) {
    const auto patches = load_training_patches(train_dir, patch_side);
    const WeightVector w = compute_weights(patches, dct_dictionary(patch_side));
    write_cswgt(out_file, w);
    std::cout << "source_count " << w.source_count << "\n";
    if (w.uniform_fallback) {
        std::cout << "uniform_fallback 1\n";
    }
    return kExitOk;
}

int run_sense(const std::string& image_path, const std::string& matrix_path,
              double sigma2, std::uint64_t seed, const std::string& out_path) {
    const SensingMatrix phi = read_csmat(matrix_path);
    const int d = phi.cols();
    const int p = static_cast<int>(std::lround(std::sqrt(double(d))));
    if (p * p != d) {
        throw std::runtime_error("matrix column count is not a square");
    }
    const Image img = read_pgm(image_path);
    MeasurementSet ms = sense_image(img, p, phi, sigma2, seed);
    ms.phi_ref = fs::path(matrix_path).filename().string();
    write_csmeas(out_path, ms);
    std::cout << "patches " << ms.measurements.size() << " grid " << ms.grid_rows
              << "x" << ms.grid_cols << "\n";
    return kExitOk;
}

int run_recover(const std::string& meas_path, const std::string& matrix_path,
                double epsilon, int width, int height, int jobs,
                const std::string& out_pgm) {
    const SensingMatrix phi = read_csmat(matrix_path);
    const int d = phi.cols();
    const int p = static_cast<int>(std::lround(std::sqrt(double(d))));
    if (p * p != d) {
        throw std::runtime_error("matrix column count is not a square");
    }
    MeasurementSet ms = read_csmeas(meas_path);
    if (width > 0 && height > 0) {
        ms.grid_rows = height / p;
        ms.grid_cols = width / p;
        if (static_cast<std::size_t>(ms.grid_rows) * ms.grid_cols !=
            ms.measurements.size()) {
            throw std::runtime_error("width/height do not match the patch count");
        }
    }
    const Dictionary psi = dct_dictionary(p);
    ReconstructionStats stats;
    const Image out = reconstruct_image(ms, phi, psi, epsilon, {}, jobs, &stats);
    write_pgm(out_pgm, out);
    if (stats.nonconverged > 0) {
        std::cerr << "warning: " << stats.nonconverged << "/" << stats.patches
                  << " patches did not converge\n";
    }
    return kExitOk;
}

int run_evaluate(const ExperimentConfig& config,
                 std::vector<std::string> matrix_files) {
    config.validate();
    if (config.output_dir.empty()) {
        throw ConfigError("evaluate: output_dir is required");
    }
    if (config.test_dir.empty() || config.train_dir.empty()) {
        throw ConfigError("evaluate: train_dir and test_dir are required");
    }
    fs::create_directories(config.output_dir);
    const int p = config.patch_side;
    const int d = p * p;
    const Dictionary psi = dct_dictionary(p);

    if (matrix_files.empty()) {
        for (const auto& entry : fs::directory_iterator(config.output_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csmat") {
                matrix_files.push_back(entry.path().string());
            }
        }
        std::sort(matrix_files.begin(), matrix_files.end());
    }
    if (matrix_files.empty()) {
        throw std::runtime_error("evaluate: no matrices found");
    }
    const auto image_files = list_pgm_files(config.test_dir);
    if (image_files.empty()) {
        throw std::runtime_error("evaluate: no test images in " + config.test_dir);
    }

    // Cross-validation patches, shared across matrices. The sensing seed is
    // a fixed constant so every matrix calibrates against the same draw.
    constexpr std::uint64_t kCalibrationSeed = 0xCA11B8A7EULL;
    const auto validation = subsample_patches(
        load_training_patches(config.train_dir, p), 96);

    struct MatrixJob {
        SensingMatrix phi;
        std::string criterion;
        int m;
        std::uint64_t design_seed;
        double epsilon;
    };
    std::vector<MatrixJob> jobs_list;
    for (const auto& file : matrix_files) {
        SensingMatrix phi = read_csmat(file);
        if (phi.cols() != d) {
            throw std::runtime_error("matrix " + file + " does not match patch_side");
        }
        std::string criterion = fs::path(file).stem().string();
        int m = phi.rows();
        std::uint64_t dseed = 0;
        parse_matrix_stem(fs::path(file).stem().string(), criterion, m, dseed);
        const double eps = calibrate_epsilon(phi, psi, validation, config.sigma2,
                                             config.epsilon_grid, kCalibrationSeed,
                                             {}, config.jobs);
        jobs_list.push_back(MatrixJob{std::move(phi), criterion, m, dseed, eps});
        std::cerr << "calibrated " << fs::path(file).filename().string()
                  << ": epsilon = " << eps << "\n";
    }

    std::vector<Image> images;
    std::vector<std::string> image_names;
    for (const auto& f : image_files) {
        images.push_back(read_pgm(f));
        image_names.push_back(fs::path(f).stem().string());
    }

    const std::size_t n_mat = jobs_list.size();
    const std::size_t n_img = images.size();
    const std::size_t n_seed = config.seeds.size();
    std::vector<ResultRow> rows(n_mat * n_img * n_seed);
    std::vector<int> nonconverged(rows.size(), 0);
    std::vector<int> patch_totals(rows.size(), 0);

    parallel_for(0, static_cast<int>(rows.size()), config.jobs, [&](int idx) {
        const std::size_t mi = static_cast<std::size_t>(idx) / (n_img * n_seed);
        const std::size_t rest = static_cast<std::size_t>(idx) % (n_img * n_seed);
        const std::size_t ii = rest / n_seed;
        const std::size_t si = rest % n_seed;
        const MatrixJob& job = jobs_list[mi];
        const Image& img = images[ii];
        const std::uint64_t seed = config.seeds[si];

        // Noise depends on (image, seed) only, so different matrices see a
        // paired draw.
        const MeasurementSet ms = sense_image(
            img, p, job.phi, config.sigma2,
            mix_seed(seed, 0x1000 + static_cast<std::uint64_t>(ii)));
        ReconstructionStats stats;
        const Image rec =
            reconstruct_image(ms, job.phi, psi, job.epsilon, {}, 1, &stats);
        const Image ref = crop(img, ms.grid_cols * p, ms.grid_rows * p);

        ResultRow row;
        row.criterion = job.criterion;
        row.m = job.m;
        row.seed = seed;
        row.image = image_names[ii];
        row.psnr = psnr(ref, rec);
        row.ssim = ssim(ref, rec);
        rows[static_cast<std::size_t>(idx)] = std::move(row);
        nonconverged[static_cast<std::size_t>(idx)] = stats.nonconverged;
        patch_totals[static_cast<std::size_t>(idx)] = stats.patches;
    });

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.criterion, a.m, a.seed, a.image) <
               std::tie(b.criterion, b.m, b.seed, b.image);
    });

    const fs::path csv_path = fs::path(config.output_dir) / "results.csv";
    {
        std::ofstream out(csv_path);
        if (!out) {
            throw std::runtime_error("cannot write " + csv_path.string());
        }
        out << "criterion,m,seed,image,psnr,ssim\n";
        for (const auto& r : rows) {
            out << r.criterion << "," << r.m << "," << r.seed << "," << r.image
                << "," << format_fixed(r.psnr, 6) << "," << format_fixed(r.ssim, 6)
                << "\n";
        }
    }

    // Mean SSIM vs m, one series per criterion.
    std::map<std::string, std::map<int, std::pair<double, int>>> agg;
    for (const auto& r : rows) {
        auto& cell = agg[r.criterion][r.m];
        cell.first += r.ssim;
        cell.second += 1;
    }
    std::vector<SvgSeries> series;
    for (const auto& [criterion, by_m] : agg) {
        SvgSeries s;
        s.label = criterion;
        for (const auto& [m, cell] : by_m) {
            s.x.push_back(m);
            s.y.push_back(cell.first / cell.second);
        }
        series.push_back(std::move(s));
    }
    write_line_chart_svg((fs::path(config.output_dir) / "ssim_vs_m.svg").string(),
                         series, "Mean SSIM vs measurements", "m", "mean SSIM");

    long total_patches = 0;
    long total_bad = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        total_patches += patch_totals[i];
        total_bad += nonconverged[i];
    }
    if (total_bad > 0) {
        std::cerr << "warning: " << total_bad << "/" << total_patches
                  << " patch solves did not converge\n";
    }
    std::cout << "rows " << rows.size() << " -> " << csv_path.string() << "\n";
    if (total_bad * 5 > total_patches) {  // more than 20% failed
        return kExitSolver;
    }
    return kExitOk;
}

SparsityStats sparsity_stats(const std::vector<Vector>& patches,
                             const Dictionary& psi) {
    const Matrix analysis = psi.basis().transpose();
    std::vector<double> ratios;
    ratios.reserve(patches.size());
    for (const Vector& x : patches) {
        if (x.size() != psi.dim()) {
            throw std::invalid_argument("sparsity_stats: patch length mismatch");
        }
        const Vector theta = analysis * x;
        const double linf = theta.cwiseAbs().maxCoeff();
        if (linf <= 0.0) {
            continue;  // all-zero patch has no defined ratio
        }
        ratios.push_back(theta.lpNorm<1>() / linf);
    }
    if (ratios.empty()) {
        throw std::runtime_error("sparsity_stats: all patches are zero");
    }
    SparsityStats stats;
    stats.patches = ratios.size();
    stats.mean = pairwise_sum(ratios.data(), ratios.size()) /
                 static_cast<double>(ratios.size());
    std::sort(ratios.begin(), ratios.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(0.99 * static_cast<double>(ratios.size())));
    stats.p99 = ratios[std::min(ratios.size() - 1, rank == 0 ? 0 : rank - 1)];
    return stats;
}

int run_stats(const std::string& train_dir, int patch_side) {
    const auto patches = load_training_patches(train_dir, patch_side);
    const SparsityStats stats = sparsity_stats(patches, dct_dictionary(patch_side));
    std::cout << "patches " << stats.patches << "\n";
    std::cout << "mean_l1_over_linf " << format_fixed(stats.mean, 4) << "\n";
    std::cout << "p99_l1_over_linf " << format_fixed(stats.p99, 4) << "\n";
    std::cout << "suggested_s_grid";
    for (int k = 0; k < 4; ++k) {
        const double s = stats.mean + (stats.p99 - stats.mean) * k / 3.0;
        std::cout << " " << format_fixed(s, 3);
    }
    std::cout << "\n";
    return kExitOk;
}

int run_plot(const std::string& results_csv, const std::string& out_svg) {
    std::ifstream in(results_csv);
    if (!in) {
        throw std::runtime_error("cannot open " + results_csv);
    }
    std::string line;
    if (!std::getline(in, line) || line != "criterion,m,seed,image,psnr,ssim") {
        throw std::runtime_error(results_csv + ": unexpected CSV header");
    }
    std::map<std::string, std::map<int, std::pair<double, int>>> agg;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string criterion, m_str, seed_str, image, psnr_str, ssim_str;
        if (!std::getline(ls, criterion, ',') || !std::getline(ls, m_str, ',') ||
            !std::getline(ls, seed_str, ',') || !std::getline(ls, image, ',') ||
            !std::getline(ls, psnr_str, ',') || !std::getline(ls, ssim_str)) {
            throw std::runtime_error(results_csv + ": malformed row: " + line);
        }
        auto& cell = agg[criterion][std::stoi(m_str)];
        cell.first += std::stod(ssim_str);
        cell.second += 1;
    }
    std::vector<SvgSeries> series;
    for (const auto& [criterion, by_m] : agg) {
        SvgSeries s;
        s.label = criterion;
        for (const auto& [m, cell] : by_m) {
            s.x.push_back(m);
            s.y.push_back(cell.first / cell.second);
        }
        series.push_back(std::move(s));
    }
    write_line_chart_svg(out_svg, series, "Mean SSIM vs measurements", "m",
                         "mean SSIM");
    return kExitOk;
}

int run_synth(const std::string& out_dir, int train_count, int test_count,
              int width, int height, std::uint64_t seed) {
    if (train_count < 0 || test_count < 0 || width < 1 || height < 1) {
        throw ConfigError("synth: bad parameters");
    }
    fs::create_directories(fs::path(out_dir) / "train");
    fs::create_directories(fs::path(out_dir) / "test");
    char name[64];
    for (int i = 0; i < train_count; ++i) {
        std::snprintf(name, sizeof(name), "train_%02d.pgm", i);
        write_pgm((fs::path(out_dir) / "train" / name).string(),
                  synth_image(width, height, mix_seed(seed, 0x7121 + i)));
    }
    for (int i = 0; i < test_count; ++i) {
        std::snprintf(name, sizeof(name), "test_%02d.pgm", i);
        write_pgm((fs::path(out_dir) / "test" / name).string(),
                  synth_image(width, height, mix_seed(seed, 0x7E57 + i)));
    }
    std::cout << "wrote " << train_count << " train and " << test_count
              << " test images to " << out_dir << "\n";
    return kExitOk;
}

}  // namespace csd
