// svg.hpp: self-contained SVG line plots (no external assets)

#pragma once

#include <span>
#include <string>
#include <vector>

namespace qthermo::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    int width = 720;
    int height = 420;
    // Polylines longer than this are reduced to per-bucket min/max pairs.
    std::size_t max_points = 4000;
};

std::string line_plot(std::span<const Series> series, const PlotOptions& opts);

// Tick positions covering [lo, hi] at a 1/2/5 x 10^k spacing.
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

} // namespace qthermo::svg
