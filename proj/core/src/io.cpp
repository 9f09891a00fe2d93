#include "csd/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace csd {

std::string format_double(double v) {
    char buf[40];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    return in;
}

[[noreturn]] void bad_format(const std::string& path, const std::string& why) {
    throw std::runtime_error(path + ": " + why);
}

}  // namespace

void write_csmat(const std::string& path, const SensingMatrix& phi) {
    std::ofstream out = open_out(path);
    const bool binary = phi.mode() == MatrixMode::Binary;
    out << "CSMAT v1 " << phi.rows() << " " << phi.cols() << " "
        << (binary ? "binary" : "continuous") << "\n";
    for (int i = 0; i < phi.rows(); ++i) {
        for (int j = 0; j < phi.cols(); ++j) {
            if (j > 0) {
                out << " ";
            }
            if (binary) {
                out << static_cast<int>(phi(i, j));
            } else {
                out << format_double(phi(i, j));
            }
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

SensingMatrix read_csmat(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string magic, version, mode_str;
    int m = 0;
    int d = 0;
    if (!(in >> magic >> version >> m >> d >> mode_str) || magic != "CSMAT" ||
        version != "v1") {
        bad_format(path, "not a CSMAT v1 file");
    }
    MatrixMode mode;
    if (mode_str == "binary") {
        mode = MatrixMode::Binary;
    } else if (mode_str == "continuous") {
        mode = MatrixMode::Continuous;
    } else {
        bad_format(path, "unknown mode '" + mode_str + "'");
    }
    if (m < 1 || d < 1) {
        bad_format(path, "bad dimensions");
    }
    Matrix e(m, d);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < d; ++j) {
            if (!(in >> e(i, j))) {
                bad_format(path, "truncated matrix data");
            }
        }
    }
    return SensingMatrix(std::move(e), mode);
}

void write_cswgt(const std::string& path, const WeightVector& weights) {
    std::ofstream out = open_out(path);
    out << "CSWGT v1 " << weights.values.size() << "\n";
    for (int i = 0; i < weights.values.size(); ++i) {
        out << format_double(weights.values(i)) << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

WeightVector read_cswgt(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string magic, version;
    int d = 0;
    if (!(in >> magic >> version >> d) || magic != "CSWGT" || version != "v1" ||
        d < 1) {
        bad_format(path, "not a CSWGT v1 file");
    }
    WeightVector w;
    w.values.resize(d);
    for (int i = 0; i < d; ++i) {
        if (!(in >> w.values(i))) {
            bad_format(path, "truncated weight data");
        }
        if (w.values(i) < 0.0) {
            bad_format(path, "negative weight");
        }
    }
    return w;
}

void write_csmeas(const std::string& path, const MeasurementSet& ms) {
    std::ofstream out = open_out(path);
    out << "CSMEAS v1 " << ms.m << " " << ms.measurements.size() << " "
        << format_double(ms.sigma2) << "\n";
    for (const Vector& y : ms.measurements) {
        for (int i = 0; i < y.size(); ++i) {
            if (i > 0) {
                out << " ";
            }
            out << format_double(y(i));
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

MeasurementSet read_csmeas(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string magic, version;
    int m = 0;
    long count = 0;
    double sigma2 = 0.0;
    if (!(in >> magic >> version >> m >> count >> sigma2) || magic != "CSMEAS" ||
        version != "v1" || m < 1 || count < 0) {
        bad_format(path, "not a CSMEAS v1 file");
    }
    MeasurementSet ms;
    ms.m = m;
    ms.sigma2 = sigma2;
    ms.grid_rows = 1;
    ms.grid_cols = static_cast<int>(count);
    ms.measurements.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        Vector y(m);
        for (int i = 0; i < m; ++i) {
            if (!(in >> y(i))) {
                bad_format(path, "truncated measurement data");
            }
        }
        ms.measurements.push_back(std::move(y));
    }
    return ms;
}

void write_flip_trace_csv(const std::string& path, const std::vector<double>& trace) {
    std::ofstream out = open_out(path);
    out << "epoch,loss\n";
    for (std::size_t e = 0; e < trace.size(); ++e) {
        out << e << "," << format_double(trace[e]) << "\n";
    }
}

void write_pga_trace_csv(const std::string& path,
                         const std::vector<PgaTracePoint>& trace) {
    std::ofstream out = open_out(path);
    out << "iter,loss,step\n";
    for (const PgaTracePoint& pt : trace) {
        out << pt.iter << "," << format_double(pt.loss) << ","
            << format_double(pt.step) << "\n";
    }
}

}  // namespace csd
