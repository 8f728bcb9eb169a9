// Copyright 2026 The iarcbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Small self-contained SVG chart writer. The CSVs are the data contract;
// these images are a reading convenience, so no styling knobs.
namespace svgplot {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct BarSeries {
    std::string label;
    std::vector<double> values;  // one per group
};

namespace detail {

inline const char* color(std::size_t i) {
    static const char* palette[] = {"#4878cf", "#ee854a", "#6acc64", "#d65f5f",
                                    "#956cb4", "#8c613c"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

inline std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// Largest 1/2/5 x 10^k step not exceeding the raw step.
inline double nice_step(double range, int target_ticks) {
    double raw = range / std::max(1, target_ticks);
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {5.0, 2.0, 1.0})
        if (m * mag <= raw) return m * mag;
    return mag;
}

struct Frame {
    double x0, x1, y0, y1;        // data bounds
    double px0, px1, py0, py1;    // pixel bounds (py0 is the top)

    double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double py(double y) const { return py1 - (y - y0) / (y1 - y0) * (py1 - py0); }
};

inline void open_svg(std::ostream& os, int w, int h, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
       << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
       << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " font-size=\"15\">" << title << "</text>\n";
}

inline void axes(std::ostream& os, const Frame& f, const std::string& x_label,
                 const std::string& y_label, bool x_ticks) {
    os << "<line x1=\"" << f.px0 << "\" y1=\"" << f.py1 << "\" x2=\"" << f.px1 << "\" y2=\""
       << f.py1 << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << f.px0 << "\" y1=\"" << f.py0 << "\" x2=\"" << f.px0 << "\" y2=\""
       << f.py1 << "\" stroke=\"black\"/>\n";
    if (x_ticks) {
        double step = nice_step(f.x1 - f.x0, 5);
        for (double t = std::ceil(f.x0 / step) * step; t <= f.x1 + 1e-9 * step; t += step) {
            double x = f.px(t);
            os << "<line x1=\"" << x << "\" y1=\"" << f.py1 << "\" x2=\"" << x << "\" y2=\""
               << f.py1 + 5 << "\" stroke=\"black\"/>\n"
               << "<text x=\"" << x << "\" y=\"" << f.py1 + 18
               << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
               << "</text>\n";
        }
    }
    double step = nice_step(f.y1 - f.y0, 5);
    for (double t = std::ceil(f.y0 / step) * step; t <= f.y1 + 1e-9 * step; t += step) {
        double y = f.py(t);
        os << "<line x1=\"" << f.px0 - 5 << "\" y1=\"" << y << "\" x2=\"" << f.px0 << "\" y2=\""
           << y << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << f.px0 - 8 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
           << "</text>\n";
    }
    os << "<text x=\"" << (f.px0 + f.px1) / 2 << "\" y=\"" << f.py1 + 36
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
       << "</text>\n"
       << "<text x=\"14\" y=\"" << (f.py0 + f.py1) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
       << " transform=\"rotate(-90 14 " << (f.py0 + f.py1) / 2 << ")\">" << y_label
       << "</text>\n";
}

inline void legend(std::ostream& os, const Frame& f, const std::vector<std::string>& labels) {
    double x = f.px0 + 12, y = f.py0 + 8;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        os << "<rect x=\"" << x << "\" y=\"" << y + 16.0 * i << "\" width=\"12\" height=\"12\""
           << " fill=\"" << color(i) << "\"/>\n"
           << "<text x=\"" << x + 17 << "\" y=\"" << y + 16.0 * i + 10
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << labels[i] << "</text>\n";
    }
}

inline std::ofstream open_file(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open plot file: " + path);
    return os;
}

}  // namespace detail

inline void write_line_svg(const std::string& path, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series) {
    const int w = 640, h = 420;
    detail::Frame f{0, 1, 0, 1, 70, w - 20.0, 40, h - 50.0};
    bool any = false;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!any) {
                f.x0 = f.x1 = s.x[i];
                f.y0 = f.y1 = s.y[i];
                any = true;
            }
            f.x0 = std::min(f.x0, s.x[i]);
            f.x1 = std::max(f.x1, s.x[i]);
            f.y0 = std::min(f.y0, s.y[i]);
            f.y1 = std::max(f.y1, s.y[i]);
        }
    if (!any) throw std::invalid_argument("line plot without data");
    if (f.x1 == f.x0) f.x1 = f.x0 + 1;
    double pad = (f.y1 - f.y0) * 0.08;
    if (pad == 0) pad = 0.5;
    f.y0 -= pad;
    f.y1 += pad;

    std::ofstream os = detail::open_file(path);
    detail::open_svg(os, w, h, title);
    detail::axes(os, f, x_label, y_label, true);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series& s = series[i];
        labels.push_back(s.label);
        os << "<polyline fill=\"none\" stroke=\"" << detail::color(i) << "\" stroke-width=\"2\""
           << " points=\"";
        for (std::size_t j = 0; j < s.x.size(); ++j)
            os << detail::num(f.px(s.x[j])) << ',' << detail::num(f.py(s.y[j])) << ' ';
        os << "\"/>\n";
        for (std::size_t j = 0; j < s.x.size(); ++j)
            os << "<circle cx=\"" << detail::num(f.px(s.x[j])) << "\" cy=\""
               << detail::num(f.py(s.y[j])) << "\" r=\"2.5\" fill=\"" << detail::color(i)
               << "\"/>\n";
    }
    detail::legend(os, f, labels);
    os << "</svg>\n";
}

inline void write_bar_svg(const std::string& path, const std::string& title,
                          const std::string& y_label, const std::vector<std::string>& groups,
                          const std::vector<BarSeries>& series) {
    for (const BarSeries& s : series)
        if (s.values.size() != groups.size())
            throw std::invalid_argument("bar series length does not match group count");
    if (groups.empty() || series.empty()) throw std::invalid_argument("bar plot without data");

    const int w = 640, h = 420;
    detail::Frame f{0, 1, 0, 1, 70, w - 20.0, 40, h - 50.0};
    f.y0 = 0;
    f.y1 = 0;
    for (const BarSeries& s : series)
        for (double v : s.values) f.y1 = std::max(f.y1, v);
    if (f.y1 == 0) f.y1 = 1;
    f.y1 *= 1.1;

    std::ofstream os = detail::open_file(path);
    detail::open_svg(os, w, h, title);
    detail::axes(os, f, "", y_label, false);

    const double span = f.px1 - f.px0;
    const double group_w = span / groups.size();
    const double bar_w = group_w * 0.8 / series.size();
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        double gx = f.px0 + group_w * gi + group_w * 0.1;
        for (std::size_t si = 0; si < series.size(); ++si) {
            double v = series[si].values[gi];
            double top = f.py(v);
            os << "<rect x=\"" << detail::num(gx + bar_w * si) << "\" y=\"" << detail::num(top)
               << "\" width=\"" << detail::num(bar_w) << "\" height=\""
               << detail::num(f.py1 - top) << "\" fill=\"" << detail::color(si) << "\"/>\n";
        }
        os << "<text x=\"" << detail::num(gx + group_w * 0.4) << "\" y=\"" << f.py1 + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << groups[gi]
           << "</text>\n";
    }
    std::vector<std::string> labels;
    for (const BarSeries& s : series) labels.push_back(s.label);
    detail::legend(os, f, labels);
    os << "</svg>\n";
}

}  // namespace svgplot
