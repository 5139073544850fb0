// Minimal deterministic SVG emission for the experiment plots (true-vs-
// predicted scatters, MDS projections, property histograms). No dependencies;
// byte-identical output for identical input.

#pragma once

#include <string>
#include <vector>

namespace polyml {

struct SvgOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool diagonal = false;  // draw the y = x reference line
    std::string comment;    // embedded as an SVG comment (resolved config)
};

/// Scatter plot; when color_values is non-empty points are colored by value
/// on a two-stop gradient.
std::string svg_scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& color_values, const SvgOptions& options);

/// Histogram with integer-aligned bins when the values are integral.
std::string svg_histogram(const std::vector<double>& values, std::size_t max_bins,
                          const SvgOptions& options);

}  // namespace polyml
