#include "qthermo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

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

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

// Keeps first/last sample and, per bucket, the samples holding the min and max y.
std::vector<std::size_t> decimate(const std::vector<double>& y, std::size_t max_points) {
    const std::size_t n = y.size();
    std::vector<std::size_t> idx;
    if (n <= max_points || max_points < 4) {
        idx.resize(n);
        for (std::size_t k = 0; k < n; ++k) idx[k] = k;
        return idx;
    }
    const std::size_t buckets = max_points / 2;
    idx.push_back(0);
    for (std::size_t b = 0; b < buckets; ++b) {
        const std::size_t lo = 1 + b * (n - 2) / buckets;
        const std::size_t hi = 1 + (b + 1) * (n - 2) / buckets;
        if (lo >= hi) continue;
        std::size_t imin = lo, imax = lo;
        for (std::size_t k = lo; k < hi; ++k) {
            if (y[k] < y[imin]) imin = k;
            if (y[k] > y[imax]) imax = k;
        }
        idx.push_back(std::min(imin, imax));
        if (imin != imax) idx.push_back(std::max(imin, imax));
    }
    idx.push_back(n - 1);
    return idx;
}

} // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / std::max(1, target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

std::string line_plot(std::span<const Series> series, const PlotOptions& opts) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw ValidationError("svg: series \"" + s.label + "\" has mismatched x/y");
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, s.y[k]);
            ymax = std::max(ymax, s.y[k]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        const double pad = std::max(1e-12, std::abs(ymin) * 0.1);
        ymin -= pad;
        ymax += pad;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }

    const double left = 80, right = 20 + 140, top = 40, bottom = 50;
    const double pw = opts.width - left - right;
    const double ph = opts.height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
       << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << opts.width << "\" height=\"" << opts.height << "\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        os << "<text x=\"" << coord(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           << "font-size=\"15\">" << escape(opts.title) << "</text>\n";

    os << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\" fill=\"black\">\n";
    for (double t : nice_ticks(xmin, xmax)) {
        os << "<line x1=\"" << coord(px(t)) << "\" y1=\"" << coord(top + ph) << "\" x2=\"" << coord(px(t)) << "\" y2=\""
           << coord(top + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << coord(px(t)) << "\" y=\"" << coord(top + ph + 18) << "\" text-anchor=\"middle\">"
           << num(t) << "</text>\n";
    }
    for (double t : nice_ticks(ymin, ymax)) {
        os << "<line x1=\"" << coord(left - 5) << "\" y1=\"" << coord(py(t)) << "\" x2=\"" << coord(left) << "\" y2=\""
           << coord(py(t)) << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(py(t)) << "\" x2=\"" << coord(left + pw)
           << "\" y2=\"" << coord(py(t)) << "\" stroke=\"#e0e0e0\"/>\n";
        os << "<text x=\"" << coord(left - 8) << "\" y=\"" << coord(py(t) + 4) << "\" text-anchor=\"end\">" << num(t)
           << "</text>\n";
    }
    os << "<text x=\"" << coord(left + pw / 2) << "\" y=\"" << coord(opts.height - 10.0)
       << "\" text-anchor=\"middle\">" << escape(opts.x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << coord(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << coord(top + ph / 2) << ")\">" << escape(opts.y_label) << "</text>\n";
    os << "</g>\n";

    os << "<rect x=\"" << coord(left) << "\" y=\"" << coord(top) << "\" width=\"" << coord(pw) << "\" height=\""
       << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (ymin < 0.0 && ymax > 0.0)
        os << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(py(0.0)) << "\" x2=\"" << coord(left + pw)
           << "\" y2=\"" << coord(py(0.0)) << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const char* color = kPalette[s % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t k : decimate(ser.y, opts.max_points)) {
            if (!std::isfinite(ser.x[k]) || !std::isfinite(ser.y[k])) continue;
            if (!first) os << ' ';
            os << coord(px(ser.x[k])) << ',' << coord(py(ser.y[k]));
            first = false;
        }
        os << "\"/>\n";
        const double ly = top + 14.0 + 18.0 * static_cast<double>(s);
        os << "<line x1=\"" << coord(left + pw + 12) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(left + pw + 36)
           << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << coord(left + pw + 42) << "\" y=\"" << coord(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(ser.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace qthermo::svg
