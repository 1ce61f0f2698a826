#pragma once

#include <string>
#include <vector>

namespace pairsim {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<Series> series;
};

/// Static SVG line chart. Non-finite points, and x <= 0 on a log axis, are skipped.
std::string render_svg(const Chart& chart);

void write_text_file(const std::string& path, const std::string& text);

} // namespace pairsim
