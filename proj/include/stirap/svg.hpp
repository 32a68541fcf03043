#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stirap::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool log_x = false;
    std::optional<std::pair<double, double>> y_range;
    int width = 720;
    int height = 440;
};

/// Standalone SVG document: axes with ticks, one polyline per series, legend.
/// Non-finite points split a polyline.
std::string render(const LinePlot& plot);

void write_file(const std::string& path, const LinePlot& plot);

}  // namespace stirap::svg
