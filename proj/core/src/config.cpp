#include "csd/config.hpp"

#include "csd/criteria.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace csd {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

TomlScalar parse_scalar(const std::string& raw, int line_no) {
    const std::string tok = trim(raw);
    if (tok.empty()) {
        throw ConfigError("config line " + std::to_string(line_no) + ": empty value");
    }
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": unterminated string");
        }
        return tok.substr(1, tok.size() - 2);
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": cannot parse value '" + tok + "'");
    }
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            in_string = !in_string;
        } else if (line[i] == '#' && !in_string) {
            return line.substr(0, i);
        }
    }
    return line;
}

}  // namespace

std::map<std::string, TomlValue> parse_toml(const std::string& text) {
    std::map<std::string, TomlValue> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        TomlValue tv;
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": arrays must close on the same line");
            }
            tv.is_array = true;
            const std::string body = value.substr(1, value.size() - 2);
            std::string item;
            bool in_string = false;
            for (const char c : body) {
                if (c == '"') in_string = !in_string;
                if (c == ',' && !in_string) {
                    if (!trim(item).empty()) {
                        tv.array.push_back(parse_scalar(item, line_no));
                    }
                    item.clear();
                } else {
                    item.push_back(c);
                }
            }
            if (!trim(item).empty()) {
                tv.array.push_back(parse_scalar(item, line_no));
            }
        } else {
            tv.scalar = parse_scalar(value, line_no);
        }
        out[key] = std::move(tv);
    }
    return out;
}

namespace {

double as_number(const TomlScalar& s, const std::string& key) {
    if (const double* v = std::get_if<double>(&s)) {
        return *v;
    }
    throw ConfigError("config key '" + key + "': expected a number");
}

std::string as_string(const TomlScalar& s, const std::string& key) {
    if (const std::string* v = std::get_if<std::string>(&s)) {
        return *v;
    }
    throw ConfigError("config key '" + key + "': expected a string");
}

int as_int(const TomlScalar& s, const std::string& key) {
    const double v = as_number(s, key);
    if (v != std::floor(v)) {
        throw ConfigError("config key '" + key + "': expected an integer");
    }
    return static_cast<int>(v);
}

template <typename T, typename F>
std::vector<T> as_array(const TomlValue& tv, const std::string& key, F convert) {
    std::vector<T> out;
    if (tv.is_array) {
        for (const auto& item : tv.array) {
            out.push_back(convert(item, key));
        }
    } else {
        out.push_back(convert(tv.scalar, key));
    }
    return out;
}

}  // namespace

void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, TomlValue>& entries) {
    for (const auto& [key, tv] : entries) {
        if (key == "patch_side") {
            config.patch_side = as_int(tv.scalar, key);
        } else if (key == "measurement_counts") {
            config.measurement_counts = as_array<int>(tv, key, as_int);
        } else if (key == "criteria") {
            config.criteria = as_array<std::string>(tv, key, as_string);
        } else if (key == "matrix_mode") {
            const std::string v = as_string(tv.scalar, key);
            if (v == "binary") {
                config.matrix_mode = MatrixMode::Binary;
            } else if (v == "continuous") {
                config.matrix_mode = MatrixMode::Continuous;
            } else {
                throw ConfigError("matrix_mode must be 'binary' or 'continuous'");
            }
        } else if (key == "sigma2") {
            config.sigma2 = as_number(tv.scalar, key);
        } else if (key == "delta") {
            config.delta = as_number(tv.scalar, key);
        } else if (key == "max_epochs") {
            config.max_epochs = as_int(tv.scalar, key);
        } else if (key == "seeds") {
            const auto ints = as_array<int>(tv, key, as_int);
            config.seeds.clear();
            for (const int s : ints) {
                if (s < 0) {
                    throw ConfigError("seeds must be nonnegative");
                }
                config.seeds.push_back(static_cast<std::uint64_t>(s));
            }
        } else if (key == "train_dir") {
            config.train_dir = as_string(tv.scalar, key);
        } else if (key == "test_dir") {
            config.test_dir = as_string(tv.scalar, key);
        } else if (key == "output_dir") {
            config.output_dir = as_string(tv.scalar, key);
        } else if (key == "epsilon_grid") {
            config.epsilon_grid = as_array<double>(tv, key, as_number);
        } else if (key == "l1linf_s") {
            config.l1linf_s = as_number(tv.scalar, key);
        } else if (key == "jobs") {
            config.jobs = as_int(tv.scalar, key);
        } else if (key == "weights_file") {
            config.weights_file = as_string(tv.scalar, key);
        } else if (key == "scan_order") {
            const std::string v = as_string(tv.scalar, key);
            if (v == "rowmajor") {
                config.scan_order = ScanOrder::RowMajor;
            } else if (v == "random") {
                config.scan_order = ScanOrder::RandomPermutationPerEpoch;
            } else {
                throw ConfigError("scan_order must be 'rowmajor' or 'random'");
            }
        } else if (key == "pga_max_iters") {
            config.pga_max_iters = as_int(tv.scalar, key);
        } else if (key == "pga_step") {
            config.pga_step = as_number(tv.scalar, key);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ExperimentConfig config;
    apply_config_entries(config, parse_toml(buf.str()));
    return config;
}

void ExperimentConfig::validate() const {
    if (patch_side < 1) {
        throw ConfigError("patch_side must be >= 1");
    }
    const int d = patch_side * patch_side;
    if (measurement_counts.empty()) {
        throw ConfigError("measurement_counts must be nonempty");
    }
    for (const int m : measurement_counts) {
        if (m < 1 || m >= d) {
            throw ConfigError("every m must satisfy 1 <= m < patch_side^2");
        }
    }
    if (criteria.empty()) {
        throw ConfigError("criteria must be nonempty");
    }
    for (const std::string& name : criteria) {
        if (name == "random") {
            continue;  // unoptimized baseline
        }
        try {
            const CriterionSpec spec = parse_criterion(name);
            if (spec.kind == CriterionKind::TriCoherence && d < 4) {
                throw ConfigError("tricoherence requires patch_side^2 >= 4");
            }
            if (spec.kind == CriterionKind::BiCoherence && d < 3) {
                throw ConfigError("bicoherence requires patch_side^2 >= 3");
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (seeds.empty()) {
        throw ConfigError("seeds must be nonempty");
    }
    if (sigma2 < 0.0) {
        throw ConfigError("sigma2 must be >= 0");
    }
    if (delta <= 0.0) {
        throw ConfigError("delta must be > 0");
    }
    if (max_epochs < 1) {
        throw ConfigError("max_epochs must be >= 1");
    }
    if (epsilon_grid.empty()) {
        throw ConfigError("epsilon_grid must be nonempty");
    }
    if (!(l1linf_s > 1.0) || !(l1linf_s <= static_cast<double>(d))) {
        throw ConfigError("l1linf_s must satisfy 1 < s <= patch_side^2");
    }
    if (pga_max_iters < 1 || pga_step <= 0.0) {
        throw ConfigError("invalid PGA settings");
    }
}

}  // namespace csd
