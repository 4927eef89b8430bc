#pragma once

#include <string>
#include <vector>

namespace msnet {

struct Series {
    std::string label;
    std::vector<double> values;
};

// Static SVG line chart: axes, tick labels, one polyline and one legend entry
// per series. Layout and formatting are fixed, so identical inputs produce
// byte-identical documents.
std::string emit_plot(const std::vector<Series>& series, const std::string& title = "",
                      const std::string& x_label = "step", const std::string& y_label = "value");

}  // namespace msnet
