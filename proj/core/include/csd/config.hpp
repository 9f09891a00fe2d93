#pragma once

#include "csd/optimizer.hpp"
#include "csd/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace csd {

/// Raised for malformed config files or inconsistent experiment settings;
/// the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full description of one benchmark run.
struct ExperimentConfig {
    int patch_side = 8;
    std::vector<int> measurement_counts{16, 24, 32};
    std::vector<std::string> criteria{"coherence"};
    MatrixMode matrix_mode = MatrixMode::Binary;
    double sigma2 = 4.0;
    double delta = 1e-3;
    int max_epochs = 50;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::string train_dir;
    std::string test_dir;
    std::string output_dir;
    std::vector<double> epsilon_grid{0.6, 0.8, 1.0, 1.2, 1.5, 2.0};
    double l1linf_s = 2.0;
    int jobs = 0;  // 0 = hardware default
    std::string weights_file;
    ScanOrder scan_order = ScanOrder::RowMajor;
    int pga_max_iters = 200;
    double pga_step = 1e-3;

    /// Throws ConfigError on invalid settings (m >= p^2, no seeds, unknown
    /// criterion names, ...). Directory existence is checked by commands
    /// that actually use a directory.
    void validate() const;
};

/// Flat TOML-subset value: string, number, boolean, or an array of those.
using TomlScalar = std::variant<std::string, double, bool>;
struct TomlValue {
    bool is_array = false;
    TomlScalar scalar;
    std::vector<TomlScalar> array;
};

/// Parses the flat `key = value` TOML subset used by the config file:
/// strings, numbers, booleans, one-line arrays, and # comments.
std::map<std::string, TomlValue> parse_toml(const std::string& text);

/// Loads a config file (TOML subset, keys mirroring ExperimentConfig).
/// Unknown keys raise ConfigError.
ExperimentConfig load_config(const std::string& path);

/// Applies a parsed key/value table on top of a config (used both by
/// load_config and by CLI flag overrides).
void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, TomlValue>& entries);

}  // namespace csd
