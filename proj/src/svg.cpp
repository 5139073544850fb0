#include "polyml/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace polyml {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 64, kRight = 24, kTop = 40, kBottom = 48;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Axis {
    double lo, hi;
    double to_px(double v, double px_lo, double px_hi) const {
        if (hi == lo) return (px_lo + px_hi) / 2;
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

Axis make_axis(double lo, double hi) {
    if (lo == hi) {
        lo -= 1;
        hi += 1;
    }
    double margin = (hi - lo) * 0.05;
    return {lo - margin, hi + margin};
}

std::vector<double> ticks(const Axis& a, int target = 5) {
    double span = a.hi - a.lo;
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    std::vector<double> out;
    double first = std::ceil(a.lo / step) * step;
    for (double v = first; v <= a.hi + step * 1e-9; v += step) out.push_back(v);
    return out;
}

std::string color_for(double t) {
    // two-stop gradient, dark violet to yellow
    auto lerp = [&](double a, double b) { return a + (b - a) * t; };
    int r = static_cast<int>(lerp(68, 253));
    int g = static_cast<int>(lerp(1, 231));
    int b = static_cast<int>(lerp(84, 37));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

void open_canvas(std::ostringstream& os, const SvgOptions& options) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    if (!options.comment.empty()) os << "<!-- " << options.comment << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"15\">" << options.title << "</text>\n";
}

void draw_axes(std::ostringstream& os, const Axis& ax, const Axis& ay, const SvgOptions& options) {
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
       << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kHeight - kBottom << "\"/>\n";
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : ticks(ax)) {
        double px = ax.to_px(t, kLeft, kWidth - kRight);
        os << "<line x1=\"" << fmt(px) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << fmt(px)
           << "\" y2=\"" << kHeight - kBottom + 4 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(px) << "\" y=\"" << kHeight - kBottom + 16
           << "\" text-anchor=\"middle\">" << fmt_tick(t) << "</text>\n";
    }
    for (double t : ticks(ay)) {
        double py = ay.to_px(t, kHeight - kBottom, kTop);
        os << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fmt(py) << "\" x2=\"" << kLeft
           << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py + 4)
           << "\" text-anchor=\"end\">" << fmt_tick(t) << "</text>\n";
    }
    if (!options.x_label.empty())
        os << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 10
           << "\" text-anchor=\"middle\">" << options.x_label << "</text>\n";
    if (!options.y_label.empty())
        os << "<text x=\"14\" y=\"" << (kTop + kHeight - kBottom) / 2
           << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
           << (kTop + kHeight - kBottom) / 2 << ")\">" << options.y_label << "</text>\n";
    os << "</g>\n";
}

}  // namespace

std::string svg_scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& color_values, const SvgOptions& options) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("svg_scatter: empty or mismatched series");
    if (!color_values.empty() && color_values.size() != xs.size())
        throw std::invalid_argument("svg_scatter: color series length mismatch");

    Axis ax = make_axis(*std::min_element(xs.begin(), xs.end()),
                        *std::max_element(xs.begin(), xs.end()));
    Axis ay = make_axis(*std::min_element(ys.begin(), ys.end()),
                        *std::max_element(ys.begin(), ys.end()));

    double c_lo = 0, c_hi = 1;
    if (!color_values.empty()) {
        c_lo = *std::min_element(color_values.begin(), color_values.end());
        c_hi = *std::max_element(color_values.begin(), color_values.end());
        if (c_hi == c_lo) c_hi = c_lo + 1;
    }

    std::ostringstream os;
    open_canvas(os, options);
    draw_axes(os, ax, ay, options);
    if (options.diagonal) {
        double lo = std::max(ax.lo, ay.lo), hi = std::min(ax.hi, ay.hi);
        if (lo < hi)
            os << "<line x1=\"" << fmt(ax.to_px(lo, kLeft, kWidth - kRight)) << "\" y1=\""
               << fmt(ay.to_px(lo, kHeight - kBottom, kTop)) << "\" x2=\""
               << fmt(ax.to_px(hi, kLeft, kWidth - kRight)) << "\" y2=\""
               << fmt(ay.to_px(hi, kHeight - kBottom, kTop))
               << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
    }
    os << "<g>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::string fill = "#3366aa";
        if (!color_values.empty()) fill = color_for((color_values[i] - c_lo) / (c_hi - c_lo));
        os << "<circle cx=\"" << fmt(ax.to_px(xs[i], kLeft, kWidth - kRight)) << "\" cy=\""
           << fmt(ay.to_px(ys[i], kHeight - kBottom, kTop)) << "\" r=\"2.5\" fill=\"" << fill
           << "\" fill-opacity=\"0.75\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string svg_histogram(const std::vector<double>& values, std::size_t max_bins,
                          const SvgOptions& options) {
    if (values.empty()) throw std::invalid_argument("svg_histogram: empty series");
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    bool integral = true;
    for (double v : values)
        if (v != std::floor(v)) {
            integral = false;
            break;
        }

    std::size_t bins;
    double bin_width, start;
    if (integral && hi - lo + 1 <= static_cast<double>(max_bins)) {
        // one bin per integer, centered
        bins = static_cast<std::size_t>(hi - lo) + 1;
        bin_width = 1.0;
        start = lo - 0.5;
    } else {
        bins = std::max<std::size_t>(1, max_bins);
        bin_width = (hi - lo) / static_cast<double>(bins);
        if (bin_width == 0) bin_width = 1;
        start = lo;
    }
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>(std::min(
            static_cast<double>(bins - 1), std::max(0.0, std::floor((v - start) / bin_width))));
        ++counts[b];
    }

    Axis ax = make_axis(start, start + bin_width * static_cast<double>(bins));
    Axis ay = make_axis(0, static_cast<double>(*std::max_element(counts.begin(), counts.end())));

    std::ostringstream os;
    open_canvas(os, options);
    draw_axes(os, ax, ay, options);
    os << "<g fill=\"#3366aa\" fill-opacity=\"0.8\" stroke=\"white\" stroke-width=\"0.5\">\n";
    for (std::size_t b = 0; b < bins; ++b) {
        double x0 = ax.to_px(start + bin_width * static_cast<double>(b), kLeft, kWidth - kRight);
        double x1 =
            ax.to_px(start + bin_width * static_cast<double>(b + 1), kLeft, kWidth - kRight);
        double y0 = ay.to_px(0, kHeight - kBottom, kTop);
        double y1 = ay.to_px(static_cast<double>(counts[b]), kHeight - kBottom, kTop);
        os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(x1 - x0)
           << "\" height=\"" << fmt(y0 - y1) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace polyml
