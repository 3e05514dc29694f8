#include "wzlab/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace wzlab {

double s_q(double lambda, double q) {
    if (lambda < 0.0) throw std::invalid_argument("s_q: lambda must be nonnegative");
    if (q < 1.0) throw std::invalid_argument("s_q: q must be at least 1");
    return lambda * std::exp(q * lambda * lambda) + std::expm1(0.5 * lambda * lambda);
}

std::string to_string(SolverPair pair) {
    return pair == SolverPair::StratonovichVsWz ? "StraVsWZ" : "ItoVsWick";
}

double bound_argument(SolverPair pair, double delta) {
    return pair == SolverPair::ItoVsWick ? std::sqrt(2.0) * delta : delta;
}

RateFit fit_rate(const ErrorCurve& curve, double q) {
    if (curve.points.size() < 3) {
        throw std::invalid_argument("fit_rate: at least three points are required");
    }
    double sx = 0.0, sy = 0.0;
    const auto n = static_cast<double>(curve.points.size());
    for (const ErrorPoint& pt : curve.points) {
        if (!(pt.error > 0.0) || !(pt.delta > 0.0) || !std::isfinite(pt.error)) {
            throw std::invalid_argument("fit_rate: points must have positive finite error and delta");
        }
        sx += std::log(pt.delta);
        sy += std::log(pt.error);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const ErrorPoint& pt : curve.points) {
        const double dx = std::log(pt.delta) - mx;
        const double dy = std::log(pt.error) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("fit_rate: delta values must not be all equal");
    }
    RateFit fit{};
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.q = q;
    fit.fitted_c = 0.0;
    for (const ErrorPoint& pt : curve.points) {
        const double s = s_q(bound_argument(curve.pair, pt.delta), q);
        if (s > 0.0) fit.fitted_c = std::max(fit.fitted_c, pt.error / s);
    }
    return fit;
}

BoundCheckReport bound_check(const ErrorCurve& curve, double q) {
    if (!(q > curve.p)) {
        throw std::invalid_argument("bound_check: the theorems require q greater than p");
    }
    if (curve.points.empty()) {
        throw std::invalid_argument("bound_check: curve has no points");
    }
    BoundCheckReport report{0.0, true};
    for (const ErrorPoint& pt : curve.points) {
        const double s = s_q(bound_argument(curve.pair, pt.delta), q);
        if (s > 0.0) {
            report.fitted_c = std::max(report.fitted_c, pt.error / s);
        } else if (pt.error > 0.0) {
            report.all_points_within = false;  // zero bound against positive error
        }
    }
    for (const ErrorPoint& pt : curve.points) {
        const double s = s_q(bound_argument(curve.pair, pt.delta), q);
        if (pt.error > report.fitted_c * s + 3.0 * pt.std_error) {
            report.all_points_within = false;
        }
    }
    if (!std::isfinite(report.fitted_c)) report.all_points_within = false;
    return report;
}

}  // namespace wzlab
