#pragma once

// Minimal line chart on a fixed 800x600 canvas.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace orbitlab::io {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<Series> series;
};

namespace detail {

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

inline std::string render_svg(const LineChart& chart) {
    constexpr double W = 800, H = 600, left = 80, right = 30, top = 50, bottom = 60;
    constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    auto ty = [&](double y) { return chart.log_y ? std::log10(y) : y; };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : chart.series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (chart.log_y && s.y[i] <= 0)) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double pw = W - left - right, ph = H - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + ph - (ty(y) - ymin) / (ymax - ymin) * ph; };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    s += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
         detail::escape_xml(chart.title) + "</text>\n";
    s += "<rect x=\"80\" y=\"50\" width=\"690\" height=\"490\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 5.0, fy = ymin + (ymax - ymin) * i / 5.0;
        const double gx = left + pw * i / 5.0, gy = top + ph - ph * i / 5.0;
        s += "<text x=\"" + detail::fmt("%.1f", gx) + "\" y=\"560\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             detail::fmt("%.4g", fx) + "</text>\n";
        const std::string ylab = chart.log_y ? "1e" + detail::fmt("%.3g", fy) : detail::fmt("%.4g", fy);
        s += "<text x=\"74\" y=\"" + detail::fmt("%.1f", gy + 4) + "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
             ylab + "</text>\n";
    }
    s += "<text x=\"425\" y=\"590\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         detail::escape_xml(chart.x_label) + "</text>\n";
    s += "<text x=\"18\" y=\"295\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 295)\">" +
         detail::escape_xml(chart.y_label) + "</text>\n";
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& ser = chart.series[k];
        const char* color = palette[k % std::size(palette)];
        std::string pts;
        for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
            if (!std::isfinite(ser.y[i]) || (chart.log_y && ser.y[i] <= 0)) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail::fmt("%.2f", px(ser.x[i])) + "," + detail::fmt("%.2f", py(ser.y[i]));
        }
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        s += "<text x=\"" + detail::fmt("%.1f", W - right - 10) + "\" y=\"" + detail::fmt("%.1f", top + 18.0 * (k + 1)) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">" +
             detail::escape_xml(ser.name) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace orbitlab::io
