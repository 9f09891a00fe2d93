#include "csd/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace csd;

namespace {

std::string write_temp(const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() /
                      ("csd_cfg_" + std::to_string(::getpid()) + "_" +
                       std::to_string(text.size()) + ".toml");
    std::ofstream out(path);
    out << text;
    return path.string();
}

}  // namespace

TEST_CASE("toml subset parses scalars, arrays, strings and comments") {
    const auto t = parse_toml(
        "# full line comment\n"
        "patch_side = 8\n"
        "sigma2 = 4.0   # trailing comment\n"
        "criteria = [\"coherence\", \"bicoherence\"]\n"
        "seeds = [1, 2, 3]\n"
        "train_dir = \"data/images/train\"\n"
        "flag = true\n");
    CHECK(std::get<double>(t.at("patch_side").scalar) == 8.0);
    CHECK(std::get<double>(t.at("sigma2").scalar) == 4.0);
    REQUIRE(t.at("criteria").is_array);
    CHECK(std::get<std::string>(t.at("criteria").array[1]) == "bicoherence");
    CHECK(t.at("seeds").array.size() == 3);
    CHECK(std::get<std::string>(t.at("train_dir").scalar) == "data/images/train");
    CHECK(std::get<bool>(t.at("flag").scalar) == true);
}

TEST_CASE("toml subset rejects malformed lines") {
    CHECK_THROWS_AS(parse_toml("key value\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("key = \n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("key = [1, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("key = \"open\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("key = 12abc\n"), ConfigError);
}

TEST_CASE("load_config fills ExperimentConfig fields") {
    const std::string path = write_temp(
        "patch_side = 6\n"
        "measurement_counts = [12, 18]\n"
        "criteria = [\"coherence\", \"wcoherence\"]\n"
        "matrix_mode = \"binary\"\n"
        "sigma2 = 2.0\n"
        "delta = 0.01\n"
        "max_epochs = 7\n"
        "seeds = [11, 12]\n"
        "train_dir = \"tr\"\n"
        "test_dir = \"te\"\n"
        "output_dir = \"out\"\n"
        "epsilon_grid = [0.5, 1.0]\n"
        "jobs = 2\n"
        "scan_order = \"random\"\n");
    const ExperimentConfig c = load_config(path);
    std::filesystem::remove(path);
    CHECK(c.patch_side == 6);
    CHECK(c.measurement_counts == std::vector<int>{12, 18});
    CHECK(c.criteria == std::vector<std::string>{"coherence", "wcoherence"});
    CHECK(c.matrix_mode == MatrixMode::Binary);
    CHECK(c.sigma2 == 2.0);
    CHECK(c.delta == 0.01);
    CHECK(c.max_epochs == 7);
    CHECK(c.seeds == std::vector<std::uint64_t>{11, 12});
    CHECK(c.train_dir == "tr");
    CHECK(c.test_dir == "te");
    CHECK(c.output_dir == "out");
    CHECK(c.epsilon_grid == std::vector<double>{0.5, 1.0});
    CHECK(c.jobs == 2);
    CHECK(c.scan_order == ScanOrder::RandomPermutationPerEpoch);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("unknown keys are config errors") {
    const std::string path = write_temp("patchside = 6\n");
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("validate enforces the compressive regime and known names") {
    ExperimentConfig c;
    c.patch_side = 4;
    c.measurement_counts = {16};  // m == d violates m < d at the config level
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.measurement_counts = {8};
    CHECK_NOTHROW(c.validate());
    c.criteria = {"nonsense"};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.criteria = {"random", "coherence"};
    CHECK_NOTHROW(c.validate());
    c.seeds = {};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.seeds = {1};
    c.delta = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.delta = 1e-3;
    c.patch_side = 1;
    c.measurement_counts = {0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("overrides apply on top of loaded config") {
    ExperimentConfig c;
    std::map<std::string, TomlValue> entries;
    TomlValue v;
    v.scalar = 3.0;
    entries["jobs"] = v;
    apply_config_entries(c, entries);
    CHECK(c.jobs == 3);
}
