#include "msnet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace msnet {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kPaletteSize = 8;

constexpr double kWidth = 720.0, kHeight = 420.0;
constexpr double kLeft = 64.0, kRight = 16.0, kTop = 32.0, kBottom = 48.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string emit_plot(const std::vector<Series>& series, const std::string& title,
                      const std::string& x_label, const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("emit_plot needs at least one series");
    const std::size_t len = series.front().values.size();
    if (len == 0) throw std::invalid_argument("emit_plot needs non-empty series");
    for (const Series& s : series)
        if (s.values.size() != len)
            throw std::invalid_argument("emit_plot: series lengths differ");

    double y_min = series.front().values.front(), y_max = y_min;
    for (const Series& s : series)
        for (double v : s.values) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    if (y_min == y_max) {
        y_min -= 1.0;
        y_max += 1.0;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double x_max = static_cast<double>(len - 1);
    auto sx = [&](double x) { return kLeft + (x_max == 0.0 ? 0.5 * plot_w : x / x_max * plot_w); };
    auto sy = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
    if (!title.empty())
        svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(kTop + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" +
           num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) + "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        const double py = sy(fy);
        svg += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick(fy) +
               "</text>\n";
        const double fx = x_max * i / 4.0;
        const double px = sx(fx);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(kTop + plot_h + 4) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(kTop + plot_h + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick(fx) +
               "</text>\n";
    }
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 8) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(x_label) + "</text>\n";
    svg += "<text x=\"14\" y=\"" + num(kTop + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 14 " + num(kTop + plot_h / 2) + ")\">" + escape(y_label) +
           "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        std::string path = "M";
        for (std::size_t i = 0; i < len; ++i) {
            if (i > 0) path += " L";
            path += num(sx(static_cast<double>(i))) + "," + num(sy(series[s].values[i]));
        }
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
    }

    // legend, top-right
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double ly = kTop + 8 + 16.0 * static_cast<double>(s);
        const char* color = kPalette[s % kPaletteSize];
        svg += "<rect x=\"" + num(kLeft + plot_w - 130) + "\" y=\"" + num(ly - 8) +
               "\" width=\"10\" height=\"10\" fill=\"" + std::string(color) + "\"/>\n";
        svg += "<text x=\"" + num(kLeft + plot_w - 116) + "\" y=\"" + num(ly + 1) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(series[s].label) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace msnet
