#include "graphene_ndr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace graphene_ndr::svg {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 60;

const char* const kDash[] = {"", "2,4", "8,4", "12,4,2,4"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
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
        if (!(lo <= hi)) lo = 0, hi = 1;
        if (hi == lo) hi = lo + 1;
    }
};

}  // namespace

std::string render(const Plot& plot) {
    Range xr, yr;
    for (const auto& s : plot.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.finish();
    yr.finish();

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(plot.title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        os << "<text x=\"" << num(px(fx)) << "\" y=\"" << kHeight - kBottom + 18
           << "\" text-anchor=\"middle\" font-size=\"12\">" << num(fx) << "</text>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(fy) + 4)
           << "\" text-anchor=\"end\" font-size=\"12\">" << num(fy) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(plot.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
       << kTop + ph / 2 << ")\">" << escape(plot.y_label) << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
        if (*kDash[k % 4]) os << " stroke-dasharray=\"" << kDash[k % 4] << "\"";
        os << " points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        const double ly = kTop + 18 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << kLeft + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw - 110 << "\" y2=\"" << ly
           << "\" stroke=\"black\"";
        if (*kDash[k % 4]) os << " stroke-dasharray=\"" << kDash[k % 4] << "\"";
        os << "/>\n<text x=\"" << kLeft + pw - 104 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << escape(s.label)
           << "</text>\n";
    }
    for (const auto& m : plot.markers) {
        os << "<circle cx=\"" << num(px(m.x)) << "\" cy=\"" << num(py(m.y)) << "\" r=\"5\" fill=\"none\" stroke=\"red\"/>\n";
        os << "<text x=\"" << num(px(m.x) + 8) << "\" y=\"" << num(py(m.y) - 8) << "\" font-size=\"12\" fill=\"red\">"
           << escape(m.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace graphene_ndr::svg
