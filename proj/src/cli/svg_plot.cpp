#include "ntl/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ntl/numeric.hpp"

namespace ntl::cli {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 90, kRight = 30, kTop = 50, kBottom = 70;
constexpr int kTicks = 5;

std::string esc(const std::string& s) {
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

std::string px(double v) { return format_fixed(v, 2); }

struct Range {
    double lo, hi;
};

Range padded(double lo, double hi) {
    if (!(hi > lo)) {
        const double w = std::max(1.0, std::fabs(lo) * 0.1);
        return {lo - w, hi + w};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

std::string tick_label(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

} // namespace

std::string render_scatter_svg(const ScatterPlot& plot) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!plot.points.empty()) {
        xmin = xmax = plot.points.front().x;
        ymin = ymax = plot.points.front().y;
        for (const auto& p : plot.points) {
            xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
        }
    }
    if (plot.fit && !plot.points.empty()) {
        ymin = std::min({ymin, plot.fit->predict(xmin), plot.fit->predict(xmax)});
        ymax = std::max({ymax, plot.fit->predict(xmin), plot.fit->predict(xmax)});
    }
    const Range xr = padded(xmin, xmax), yr = padded(ymin, ymax);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
       << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
       << esc(plot.title) << "</text>\n";

    // axes and ticks
    os << "<g stroke=\"black\" stroke-width=\"1\">\n"
       << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\""
       << px(kTop + ph) << "\"/>\n"
       << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft) << "\" y2=\""
       << px(kTop + ph) << "\"/>\n";
    for (int t = 0; t <= kTicks; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * t / kTicks;
        os << "<line x1=\"" << px(sx(fx)) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(sx(fx)) << "\" y2=\""
           << px(kTop + ph + 6) << "\"/>\n";
        os << "<line x1=\"" << px(kLeft - 6) << "\" y1=\"" << px(sy(fy)) << "\" x2=\"" << px(kLeft) << "\" y2=\""
           << px(sy(fy)) << "\"/>\n";
    }
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int t = 0; t <= kTicks; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * t / kTicks;
        os << "<text x=\"" << px(sx(fx)) << "\" y=\"" << px(kTop + ph + 20) << "\" text-anchor=\"middle\">"
           << tick_label(fx) << "</text>\n";
        os << "<text x=\"" << px(kLeft - 10) << "\" y=\"" << px(sy(fy) + 4) << "\" text-anchor=\"end\">"
           << tick_label(fy) << "</text>\n";
    }
    os << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 20) << "\" text-anchor=\"middle\">"
       << esc(plot.x_label) << "</text>\n"
       << "<text x=\"20\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << px(kTop + ph / 2) << ")\">" << esc(plot.y_label) << "</text>\n</g>\n";

    if (plot.fit && !plot.points.empty()) {
        os << "<line x1=\"" << px(sx(xmin)) << "\" y1=\"" << px(sy(plot.fit->predict(xmin))) << "\" x2=\""
           << px(sx(xmax)) << "\" y2=\"" << px(sy(plot.fit->predict(xmax)))
           << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    os << "<g fill=\"#1f77b4\">\n";
    for (const auto& p : plot.points) {
        os << "<circle cx=\"" << px(sx(p.x)) << "\" cy=\"" << px(sy(p.y)) << "\" r=\"4\">";
        if (!p.label.empty())
            os << "<title>" << esc(p.label) << "</title>";
        os << "</circle>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace ntl::cli
