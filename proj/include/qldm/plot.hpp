#pragma once

#include <string>
#include <vector>

namespace qldm {

// Comma-separated table with a header row; lines starting with '#' are
// metadata comments and skipped.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const std::string& path);

std::size_t column_index(const Csv& csv, const std::string& name);

std::vector<double> numeric_column(const Csv& csv, std::size_t index);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained SVG line chart: axes, ticks, legend, one polyline per
// series. `comment` (if nonempty) is embedded as an XML comment.
void write_svg_lines(const std::string& path, const std::vector<PlotSeries>& series,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& title, const std::string& comment = "");

}  // namespace qldm
