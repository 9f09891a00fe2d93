#pragma once

#include <string>
#include <vector>

namespace csd {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Hand-emitted SVG line chart: axes with ticks, one polyline per series,
/// and a legend. No plotting dependency.
void write_line_chart_svg(const std::string& path,
                          const std::vector<SvgSeries>& series,
                          const std::string& title, const std::string& x_label,
                          const std::string& y_label);

}  // namespace csd
