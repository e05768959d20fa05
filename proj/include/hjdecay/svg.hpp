#pragma once

#include "hjdecay/common.hpp"

namespace hjd {

struct SvgSeries {
    std::string label;
    std::string color = "#1f6fb2";
    std::vector<std::pair<double, double>> points;
};

/// Deterministic standalone line plot (fixed canvas, 12-digit coordinates).
/// log_y plots log10 of positive values; non-positive points are dropped.
std::string render_line_plot_svg(const std::string& title, const std::string& x_label,
                                 const std::string& y_label,
                                 const std::vector<SvgSeries>& series, bool log_y);

} // namespace hjd
