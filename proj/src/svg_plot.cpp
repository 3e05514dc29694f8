#include "wzlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wzlab {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

struct Mapper {
    double x_lo, x_hi, y_lo, y_hi;
    double x(double logv) const {
        return kMargin + (logv - x_lo) / (x_hi - x_lo) * (kWidth - 2.0 * kMargin);
    }
    double y(double logv) const {
        return kHeight - kMargin - (logv - y_lo) / (y_hi - y_lo) * (kHeight - 2.0 * kMargin);
    }
};

}  // namespace

std::string loglog_svg(const ErrorCurve& curve, const RateFit& fit, const std::string& title) {
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool first = true;
    for (const ErrorPoint& pt : curve.points) {
        if (!(pt.delta > 0.0) || !(pt.error > 0.0)) continue;
        const double lx = std::log10(pt.delta);
        const double ly = std::log10(pt.error);
        if (first) {
            x_lo = x_hi = lx;
            y_lo = y_hi = ly;
            first = false;
        } else {
            x_lo = std::min(x_lo, lx);
            x_hi = std::max(x_hi, lx);
            y_lo = std::min(y_lo, ly);
            y_hi = std::max(y_hi, ly);
        }
    }
    if (first) {
        x_lo = y_lo = -1.0;
        x_hi = y_hi = 0.0;
    }
    const double pad_x = std::max(0.2, 0.1 * (x_hi - x_lo));
    const double pad_y = std::max(0.2, 0.1 * (y_hi - y_lo));
    Mapper m{x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    svg << "  <line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "log10 delta(eps)</text>\n";
    svg << "  <text x=\"18\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">log10 error</text>\n";

    // decade ticks
    for (int d = static_cast<int>(std::floor(m.x_lo)); d <= static_cast<int>(std::ceil(m.x_hi));
         ++d) {
        const double px = m.x(d);
        if (px < kMargin || px > kWidth - kMargin) continue;
        svg << "  <line x1=\"" << px << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << px
            << "\" y2=\"" << kHeight - kMargin + 5 << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << px << "\" y=\"" << kHeight - kMargin + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">1e" << d
            << "</text>\n";
    }
    for (int d = static_cast<int>(std::floor(m.y_lo)); d <= static_cast<int>(std::ceil(m.y_hi));
         ++d) {
        const double py = m.y(d);
        if (py < kMargin || py > kHeight - kMargin) continue;
        svg << "  <line x1=\"" << kMargin - 5 << "\" y1=\"" << py << "\" x2=\"" << kMargin
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << kMargin - 8 << "\" y=\"" << py + 3
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">1e" << d
            << "</text>\n";
    }

    // fitted line across the plotted range
    {
        const double lx0 = m.x_lo, lx1 = m.x_hi;
        // fit is in natural logs: log(err) = intercept + slope * log(delta)
        const auto fit_y = [&](double lx) {
            const double ln_delta = lx * std::log(10.0);
            return (fit.intercept + fit.slope * ln_delta) / std::log(10.0);
        };
        svg << "  <line x1=\"" << m.x(lx0) << "\" y1=\"" << m.y(fit_y(lx0)) << "\" x2=\""
            << m.x(lx1) << "\" y2=\"" << m.y(fit_y(lx1))
            << "\" stroke=\"#1f77b4\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    }

    for (const ErrorPoint& pt : curve.points) {
        if (!(pt.delta > 0.0) || !(pt.error > 0.0)) continue;
        svg << "  <circle cx=\"" << m.x(std::log10(pt.delta)) << "\" cy=\""
            << m.y(std::log10(pt.error)) << "\" r=\"4\" fill=\"#d62728\"/>\n";
    }

    std::ostringstream label;
    label.precision(4);
    label << "slope " << fit.slope << ", r2 " << fit.r_squared;
    svg << "  <text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 8
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << label.str()
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace wzlab
