#include "hjdecay/svg.hpp"

#include <algorithm>

namespace hjd {
namespace {

constexpr double kWidth = 840, kHeight = 520;
constexpr double kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;

std::string esc(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

} // namespace

std::string render_line_plot_svg(const std::string& title, const std::string& x_label,
                                 const std::string& y_label,
                                 const std::vector<SvgSeries>& series, bool log_y)
{
    std::vector<SvgSeries> plot = series;
    if (log_y)
        for (auto& s : plot) {
            std::vector<std::pair<double, double>> kept;
            for (auto [x, y] : s.points)
                if (y > 0.0) kept.emplace_back(x, std::log10(y));
            s.points = std::move(kept);
        }

    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& s : plot)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    const bool empty = !(xmin <= xmax);
    if (empty) {
        xmin = 0; xmax = 1; ymin = 0; ymax = 1;
    }
    if (xmax - xmin < 1e-12) { xmax += 0.5; xmin -= 0.5; }
    if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }

    auto px = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double y) {
        return kHeight - kBottom - (y - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(kWidth) +
           "\" height=\"" + format_double(kHeight) + "\" viewBox=\"0 0 " +
           format_double(kWidth) + " " + format_double(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + format_double(kWidth / 2) +
           "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\" font-family=\"sans-serif\">" +
           esc(title) + "</text>\n";

    // frame + ticks
    svg += "<rect x=\"" + format_double(kLeft) + "\" y=\"" + format_double(kTop) +
           "\" width=\"" + format_double(kWidth - kLeft - kRight) + "\" height=\"" +
           format_double(kHeight - kTop - kBottom) +
           "\" fill=\"none\" stroke=\"#444444\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 5.0;
        const double fy = ymin + (ymax - ymin) * i / 5.0;
        svg += "<text x=\"" + format_double(px(fx)) + "\" y=\"" +
               format_double(kHeight - kBottom + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" +
               format_double(fx) + "</text>\n";
        const std::string ylab = log_y ? ("1e" + format_double(fy)) : format_double(fy);
        svg += "<text x=\"" + format_double(kLeft - 8) + "\" y=\"" +
               format_double(py(fy) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + ylab +
               "</text>\n";
    }
    svg += "<text x=\"" + format_double(kWidth / 2) + "\" y=\"" +
           format_double(kHeight - 16) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" +
           esc(x_label) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + format_double(kHeight / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 " +
           format_double(kHeight / 2) + ")\">" + esc(y_label) + "</text>\n";

    double legend_y = kTop + 16;
    for (const auto& s : plot) {
        std::string pts;
        for (auto [x, y] : s.points) {
            if (!pts.empty()) pts += " ";
            pts += format_double(px(x)) + "," + format_double(py(y));
        }
        if (!pts.empty())
            svg += "<polyline fill=\"none\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.8\" points=\"" + pts + "\"/>\n";
        svg += "<line x1=\"" + format_double(kLeft + 12) + "\" y1=\"" +
               format_double(legend_y) + "\" x2=\"" + format_double(kLeft + 38) + "\" y2=\"" +
               format_double(legend_y) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"1.8\"/>\n";
        svg += "<text x=\"" + format_double(kLeft + 44) + "\" y=\"" +
               format_double(legend_y + 4) +
               "\" font-size=\"12\" font-family=\"sans-serif\">" + esc(s.label) + "</text>\n";
        legend_y += 18;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace hjd
