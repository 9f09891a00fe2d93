#include "csd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csd {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 170;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void write_line_chart_svg(const std::string& path,
                          const std::vector<SvgSeries>& series,
                          const std::string& title, const std::string& x_label,
                          const std::string& y_label) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("write_line_chart_svg: x/y size mismatch");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmin <= xmax)) {  // no data at all
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin) {
        xmax = xmin + 1.0;
    }
    if (ymax == ymin) {
        ymax = ymin + 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double x) {
        return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
    };
    auto sy = [&](double y) {
        return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h;
    };

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_line_chart_svg: cannot open " + path);
    }
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n";
    out << "<rect width='" << kWidth << "' height='" << kHeight
        << "' fill='white'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
        << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";

    // Axes.
    out << "<line x1='" << kMarginLeft << "' y1='" << kMarginTop << "' x2='"
        << kMarginLeft << "' y2='" << kMarginTop + plot_h
        << "' stroke='black'/>\n";
    out << "<line x1='" << kMarginLeft << "' y1='" << kMarginTop + plot_h
        << "' x2='" << kMarginLeft + plot_w << "' y2='" << kMarginTop + plot_h
        << "' stroke='black'/>\n";

    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double fx = xmin + (xmax - xmin) * t / ticks;
        const double fy = ymin + (ymax - ymin) * t / ticks;
        const double px = sx(fx);
        const double py = sy(fy);
        out << "<line x1='" << px << "' y1='" << kMarginTop + plot_h << "' x2='"
            << px << "' y2='" << kMarginTop + plot_h + 5 << "' stroke='black'/>\n";
        out << "<text x='" << px << "' y='" << kMarginTop + plot_h + 20
            << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
            << fmt(fx) << "</text>\n";
        out << "<line x1='" << kMarginLeft - 5 << "' y1='" << py << "' x2='"
            << kMarginLeft << "' y2='" << py << "' stroke='black'/>\n";
        out << "<text x='" << kMarginLeft - 8 << "' y='" << py + 4
            << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
            << fmt(fy) << "</text>\n";
    }
    out << "<text x='" << kMarginLeft + plot_w / 2 << "' y='" << kHeight - 15
        << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
        << x_label << "</text>\n";
    out << "<text x='18' y='" << kMarginTop + plot_h / 2
        << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
        << "transform='rotate(-90 18 " << kMarginTop + plot_h / 2 << ")'>"
        << y_label << "</text>\n";

    // Series polylines plus legend.
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill='none' stroke='" << color
            << "' stroke-width='2' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i > 0) {
                out << " ";
            }
            out << fmt(sx(s.x[i])) << "," << fmt(sy(s.y[i]));
        }
        out << "'/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << "<circle cx='" << fmt(sx(s.x[i])) << "' cy='" << fmt(sy(s.y[i]))
                << "' r='3' fill='" << color << "'/>\n";
        }
        const double ly = kMarginTop + 16.0 * static_cast<double>(k);
        out << "<line x1='" << kMarginLeft + plot_w + 12 << "' y1='" << ly
            << "' x2='" << kMarginLeft + plot_w + 36 << "' y2='" << ly
            << "' stroke='" << color << "' stroke-width='2'/>\n";
        out << "<text x='" << kMarginLeft + plot_w + 42 << "' y='" << ly + 4
            << "' font-family='sans-serif' font-size='12'>" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) {
        throw std::runtime_error("write_line_chart_svg: write failed " + path);
    }
}

}  // namespace csd
