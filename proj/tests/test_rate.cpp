#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wzlab/rate.hpp"

using namespace wzlab;

TEST_CASE("rate function values", "[rate]") {
    REQUIRE(s_q(0.0, 1.0) == 0.0);
    REQUIRE(s_q(0.0, 5.0) == 0.0);
    REQUIRE(s_q(1.0, 2.0) == Catch::Approx(8.0377773696307778).epsilon(1e-14));
    // series expansion 1 + q lambda^2 + lambda / 2 near zero
    REQUIRE(s_q(1e-3, 2.0) / 1e-3 == Catch::Approx(1.0005).margin(5e-4));
    REQUIRE_THROWS_AS(s_q(-0.1, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(s_q(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("rate function is monotone in lambda and q", "[rate]") {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double v = s_q(3.0 * i / 100.0, 2.0);
        REQUIRE(v >= prev);
        prev = v;
    }
    REQUIRE(s_q(0.7, 3.0) >= s_q(0.7, 2.0));
}

namespace {

ErrorCurve synthetic_curve(double exponent) {
    ErrorCurve curve{SolverPair::StratonovichVsWz, 2.0, {}};
    for (const double delta : {0.2, 0.1, 0.05, 0.025}) {
        curve.points.push_back(
            ErrorPoint{delta, delta, std::pow(delta, exponent), 0.0, 100});
    }
    return curve;
}

}  // namespace

TEST_CASE("synthetic power laws are recovered exactly", "[rate]") {
    const RateFit linear = fit_rate(synthetic_curve(1.0), 3.0);
    REQUIRE(linear.slope == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(linear.r_squared == Catch::Approx(1.0).epsilon(1e-12));

    const RateFit quadratic = fit_rate(synthetic_curve(2.0), 3.0);
    REQUIRE(quadratic.slope == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(quadratic.r_squared == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate fits are rejected", "[rate]") {
    ErrorCurve curve{SolverPair::StratonovichVsWz, 2.0, {}};
    curve.points.push_back(ErrorPoint{0.1, 0.1, 0.01, 0.0, 10});
    curve.points.push_back(ErrorPoint{0.05, 0.05, 0.005, 0.0, 10});
    REQUIRE_THROWS_AS(fit_rate(curve, 3.0), std::invalid_argument);  // two points

    curve.points.push_back(ErrorPoint{0.025, 0.025, 0.0, 0.0, 10});  // zero error
    REQUIRE_THROWS_AS(fit_rate(curve, 3.0), std::invalid_argument);
}

TEST_CASE("bound check requires q greater than p", "[rate]") {
    const ErrorCurve curve = synthetic_curve(1.0);
    REQUIRE_THROWS_AS(bound_check(curve, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(bound_check(curve, 1.5), std::invalid_argument);
    REQUIRE_NOTHROW(bound_check(curve, 2.5));
}

TEST_CASE("bound check fits one global constant", "[rate]") {
    const ErrorCurve curve = synthetic_curve(1.0);
    const auto report = bound_check(curve, 3.0);
    REQUIRE(report.all_points_within);
    REQUIRE(report.fitted_c > 0.0);
    for (const ErrorPoint& pt : curve.points) {
        REQUIRE(pt.error <= report.fitted_c * s_q(pt.delta, 3.0) + 1e-15);
    }
}

TEST_CASE("single point curve is trivially within its own constant", "[rate]") {
    ErrorCurve curve{SolverPair::ItoVsWick, 2.0, {ErrorPoint{0.1, 0.05, 0.02, 0.001, 50}}};
    const auto report = bound_check(curve, 3.0);
    REQUIRE(report.all_points_within);
    const double arg = std::sqrt(2.0) * 0.05;  // the Wick pair scales the argument
    REQUIRE(report.fitted_c == Catch::Approx(0.02 / s_q(arg, 3.0)).epsilon(1e-12));
}

TEST_CASE("wick pair scales the bound argument by sqrt 2", "[rate]") {
    REQUIRE(bound_argument(SolverPair::StratonovichVsWz, 0.25) == 0.25);
    REQUIRE(bound_argument(SolverPair::ItoVsWick, 0.25) ==
            Catch::Approx(0.25 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("closed-form error curves have slope near one", "[rate]") {
    const TimeGrid grid = make_grid(1.0, 512);
    const SdeConfig strat{DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, grid,
                          SdeInterpretation::Stratonovich};
    const SdeConfig ito{DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, grid,
                        SdeInterpretation::Ito};

    for (const SolverPair pair : {SolverPair::StratonovichVsWz, SolverPair::ItoVsWick}) {
        ErrorCurve curve{pair, 2.0, {}};
        for (int k = 4; k <= 8; ++k) {
            const Kernel kernel = Kernel::polygonal(grid, std::pow(2.0, -k));
            curve.points.push_back(closed_form_error(
                pair, pair == SolverPair::ItoVsWick ? ito : strat, kernel, 1));
        }
        const RateFit fit = fit_rate(curve, 3.0);
        INFO(to_string(pair));
        REQUIRE(fit.slope >= 0.9);
        REQUIRE(fit.slope <= 1.1);
        REQUIRE(fit.r_squared > 0.99);

        // fitted constant is stable when the ladder is halved
        ErrorCurve upper{pair, 2.0, {curve.points.begin(), curve.points.begin() + 3}};
        ErrorCurve lower{pair, 2.0, {curve.points.end() - 3, curve.points.end()}};
        const double c_full = bound_check(curve, 3.0).fitted_c;
        const double c_upper = bound_check(upper, 3.0).fitted_c;
        const double c_lower = bound_check(lower, 3.0).fitted_c;
        REQUIRE(std::abs(c_upper - c_full) <= 0.2 * c_full);
        REQUIRE(std::abs(c_lower - c_full) <= 0.2 * c_full);
    }
}
