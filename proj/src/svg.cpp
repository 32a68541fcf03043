#include "stirap/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "stirap/errors.hpp"

namespace stirap::svg {
namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
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

std::string fmt(double x, const char* spec = "%.4g") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

// 1-2-5 tick spacing giving roughly `target` intervals.
std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            const double pad = std::max(1e-3, 0.05 * std::abs(hi));
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string render(const LinePlot& plot) {
    const double left = 80, right = 170, top = 40, bottom = 60;
    const double w = plot.width - left - right, h = plot.height - top - bottom;

    auto xval = [&](double x) { return plot.log_x ? (x > 0 ? std::log10(x) : std::nan("")) : x; };

    Range xr, yr;
    for (const auto& s : plot.series) {
        for (double x : s.x) xr.add(xval(x));
        for (double y : s.y) yr.add(y);
    }
    xr.finish();
    yr.finish();
    if (plot.y_range) {
        yr.lo = plot.y_range->first;
        yr.hi = plot.y_range->second;
    }

    auto px = [&](double x) { return left + (xval(x) - xr.lo) / (xr.hi - xr.lo) * w; };
    auto py = [&](double y) { return top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
        << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left + w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(plot.title)
        << "</text>\n";

    // grid and ticks
    out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    std::vector<double> xt;
    if (plot.log_x) {
        for (double d = std::floor(xr.lo); d <= std::ceil(xr.hi); d += 1.0)
            for (double m : {1.0, 2.0, 5.0}) {
                const double v = std::log10(m) + d;
                if (v >= xr.lo - 1e-12 && v <= xr.hi + 1e-12) xt.push_back(v);
            }
    } else {
        xt = linear_ticks(xr.lo, xr.hi);
    }
    const auto yt = linear_ticks(yr.lo, yr.hi);
    for (double v : xt) {
        const double x = left + (v - xr.lo) / (xr.hi - xr.lo) * w;
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << top << "\" x2=\"" << fmt(x) << "\" y2=\"" << top + h << "\"/>\n";
    }
    for (double v : yt)
        out << "<line x1=\"" << left << "\" y1=\"" << fmt(py(v)) << "\" x2=\"" << left + w << "\" y2=\"" << fmt(py(v))
            << "\"/>\n";
    out << "</g>\n";
    for (double v : xt) {
        const double x = left + (v - xr.lo) / (xr.hi - xr.lo) * w;
        out << "<text x=\"" << fmt(x) << "\" y=\"" << top + h + 18 << "\" text-anchor=\"middle\">"
            << fmt(plot.log_x ? std::pow(10.0, v) : v) << "</text>\n";
    }
    for (double v : yt)
        out << "<text x=\"" << left - 8 << "\" y=\"" << fmt(py(v) + 4) << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left + w / 2 << "\" y=\"" << plot.height - 15 << "\" text-anchor=\"middle\">"
        << escape(plot.x_label) << "</text>\n";
    out << "<text transform=\"translate(20," << top + h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(plot.y_label) << "</text>\n";

    // data, clipped to the axes box
    out << "<clipPath id=\"plot-area\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
        << "\"/></clipPath>\n<g clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"1.6\">\n";
    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        const char* color = kPalette[i % kPalette.size()];
        std::string points;
        auto flush = [&] {
            if (!points.empty())
                out << "<polyline stroke=\"" << color << "\" points=\"" << points << "\"/>\n";
            points.clear();
        };
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t k = 0; k < n; ++k) {
            const double x = px(s.x[k]), y = py(s.y[k]);
            if (!std::isfinite(x) || !std::isfinite(y)) {
                flush();
                continue;
            }
            points += fmt(x, "%.2f") + "," + fmt(y, "%.2f") + " ";
        }
        flush();
    }
    out << "</g>\n";

    // legend
    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const double y = top + 10 + 18.0 * static_cast<double>(i);
        const double x = left + w + 12;
        out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 22 << "\" y2=\"" << y << "\" stroke=\""
            << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << x + 28 << "\" y=\"" << y + 4 << "\">" << escape(plot.series[i].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const LinePlot& plot) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << render(plot);
}

}  // namespace stirap::svg
