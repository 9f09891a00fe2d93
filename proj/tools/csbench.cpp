// csbench: sensing-matrix design and block compressed-sensing benchmark CLI.
//
// Subcommands: design, weights, sense, recover, evaluate, stats, plot, synth.
// Exit codes: 0 success, 2 config error, 3 data error, 4 solver failure
// budget exceeded.

#include "csd/bench.hpp"
#include "csd/config.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    bool jobs_set = false;
};

csd::ExperimentConfig make_config(const CommonOpts& opts) {
    csd::ExperimentConfig config;
    if (!opts.config_path.empty()) {
        config = csd::load_config(opts.config_path);
    }
    if (!opts.out.empty()) {
        config.output_dir = opts.out;
    }
    if (opts.seed_set) {
        config.seeds = {opts.seed};
    }
    if (opts.jobs_set) {
        config.jobs = opts.jobs;
    }
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "TOML config file");
    cmd->add_option("--out", opts.out, "output directory (overrides config)");
    cmd->add_option("--seed", opts.seed, "single seed (overrides config seeds)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--jobs", opts.jobs, "worker threads (0 = hardware)")
        ->each([&opts](const std::string&) { opts.jobs_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sensing-matrix design and block compressed-sensing benchmark"};
    app.require_subcommand(1);

    CommonOpts design_opts;
    auto* design = app.add_subcommand(
        "design", "optimize sensing matrices per (criterion, m, seed)");
    add_common(design, design_opts);

    // weights
    std::string w_train, w_out;
    int w_p = 8;
    auto* weights = app.add_subcommand("weights", "compute DCT-domain weights");
    weights->add_option("--train", w_train, "training image directory")->required();
    weights->add_option("--patch-side", w_p, "patch side p");
    weights->add_option("--out-file", w_out, "output .cswgt file")->required();

    // sense
    std::string s_image, s_matrix, s_out;
    double s_sigma2 = 4.0;
    std::uint64_t s_seed = 0;
    auto* sense = app.add_subcommand("sense", "measure one image with a matrix");
    sense->add_option("--image", s_image, "input .pgm")->required();
    sense->add_option("--matrix", s_matrix, "input .csmat")->required();
    sense->add_option("--sigma2", s_sigma2, "noise variance");
    sense->add_option("--seed", s_seed, "noise seed");
    sense->add_option("--out-file", s_out, "output .csmeas")->required();

    // recover
    std::string r_meas, r_matrix, r_out;
    double r_eps = 0.0;
    int r_w = 0, r_h = 0, r_jobs = 0;
    auto* recover = app.add_subcommand("recover", "reconstruct from measurements");
    recover->add_option("--measurements", r_meas, "input .csmeas")->required();
    recover->add_option("--matrix", r_matrix, "input .csmat")->required();
    recover->add_option("--epsilon", r_eps, "BPDN noise bound")->required();
    recover->add_option("--width", r_w, "original image width in pixels");
    recover->add_option("--height", r_h, "original image height in pixels");
    recover->add_option("--jobs", r_jobs, "worker threads");
    recover->add_option("--out-file", r_out, "output .pgm")->required();

    CommonOpts eval_opts;
    std::vector<std::string> eval_matrices;
    auto* evaluate = app.add_subcommand(
        "evaluate", "sense/reconstruct/score every matrix x image x seed");
    add_common(evaluate, eval_opts);
    evaluate->add_option("--matrix", eval_matrices,
                         "matrix file(s); default: scan output dir");

    // stats
    std::string st_train;
    int st_p = 8;
    auto* stats = app.add_subcommand(
        "stats", "l1/linf sparsity statistics of training patches");
    stats->add_option("--train", st_train, "training image directory")->required();
    stats->add_option("--patch-side", st_p, "patch side p");

    // plot
    std::string p_csv, p_out;
    auto* plot = app.add_subcommand("plot", "regenerate the SSIM-vs-m chart");
    plot->add_option("--results", p_csv, "results.csv from evaluate")->required();
    plot->add_option("--out-file", p_out, "output .svg")->required();

    // synth
    std::string sy_out = "data/images";
    int sy_train = 8, sy_test = 6, sy_w = 80, sy_h = 80;
    std::uint64_t sy_seed = 7;
    auto* synth = app.add_subcommand("synth", "generate synthetic sample images");
    synth->add_option("--out", sy_out, "output directory");
    synth->add_option("--train-count", sy_train, "training images to generate");
    synth->add_option("--test-count", sy_test, "test images to generate");
    synth->add_option("--width", sy_w, "image width");
    synth->add_option("--height", sy_h, "image height");
    synth->add_option("--seed", sy_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) {
            return csd::run_design(make_config(design_opts));
        }
        if (weights->parsed()) {
            return csd::run_weights(w_train, w_p, w_out);
        }
        if (sense->parsed()) {
            return csd::run_sense(s_image, s_matrix, s_sigma2, s_seed, s_out);
        }
        if (recover->parsed()) {
            return csd::run_recover(r_meas, r_matrix, r_eps, r_w, r_h, r_jobs, r_out);
        }
        if (evaluate->parsed()) {
            return csd::run_evaluate(make_config(eval_opts), eval_matrices);
        }
        if (stats->parsed()) {
            return csd::run_stats(st_train, st_p);
        }
        if (plot->parsed()) {
            return csd::run_plot(p_csv, p_out);
        }
        if (synth->parsed()) {
            return csd::run_synth(sy_out, sy_train, sy_test, sy_w, sy_h, sy_seed);
        }
    } catch (const csd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return csd::kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return csd::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return csd::kExitData;
    }
    return csd::kExitOk;
}
