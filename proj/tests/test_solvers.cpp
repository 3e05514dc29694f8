#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wzlab/sde.hpp"

using namespace wzlab;

namespace {

SdeConfig strat_config(DriftSpec drift, SigmaSpec sigma, double x0, const TimeGrid& grid) {
    return SdeConfig{drift, sigma, x0, grid, SdeInterpretation::Stratonovich};
}

SdeConfig ito_config(DriftSpec drift, SigmaSpec sigma, double x0, const TimeGrid& grid) {
    return SdeConfig{drift, sigma, x0, grid, SdeInterpretation::Ito};
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst,
                         std::abs(a[i] - b[i]) / std::max({std::abs(a[i]), std::abs(b[i]), 1.0}));
    }
    return worst;
}

}  // namespace

TEST_CASE("drift families certify their constants", "[solvers]") {
    const auto drifts = {DriftSpec::zero(), DriftSpec::linear(1.3),
                         DriftSpec::affine_sine(0.7, 0.4), DriftSpec::logistic_clipped(1.1, 2.0)};
    for (const DriftSpec& b : drifts) {
        for (std::uint64_t i = 0; i < 200; ++i) {
            const double t = std::abs(detail::gaussian_draw(1, i, 0));
            const double x = 3.0 * detail::gaussian_draw(1, i, 1);
            const double y = 3.0 * detail::gaussian_draw(1, i, 2);
            REQUIRE(std::abs(b(t, x) - b(t, y)) <= b.lipschitz() * std::abs(x - y) + 1e-12);
            REQUIRE(std::abs(b(t, x)) <= b.growth() * (1.0 + std::abs(x)) + 1e-12);
        }
    }
    REQUIRE(DriftSpec::zero().lipschitz() == 0.0);
    REQUIRE(DriftSpec::zero().growth() == 0.0);
}

TEST_CASE("sigma families respect their sup bound", "[solvers]") {
    const TimeGrid grid = make_grid(2.0, 64);
    const auto sigmas = {SigmaSpec::constant(-1.5),
                         SigmaSpec::piecewise_constant({0.5, -2.0, 1.0}, 2.0),
                         SigmaSpec::sine(0.5, 0.7, 3.0)};
    for (const SigmaSpec& s : sigmas) {
        for (std::size_t k = 0; k <= 64; ++k) {
            REQUIRE(std::abs(s(grid.node(k))) <= s.sup_norm() + 1e-12);
        }
    }
}

TEST_CASE("stratonovich exponential closed form", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 1 << 14);
    const auto cfg = strat_config(DriftSpec::zero(), SigmaSpec::constant(1.0), 2.0, grid);
    const auto path = sample_brownian(grid, 101, 0);
    const auto sol = exact_stratonovich(cfg, path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 512) {
        const double expected = 2.0 * std::exp(path.value_at_node(k));
        REQUIRE(sol.values[k] == Catch::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("zero initial condition is a fixed point", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 256);
    const auto path = sample_brownian(grid, 102, 0);
    for (const DriftSpec& b : {DriftSpec::zero(), DriftSpec::linear(0.8)}) {
        const auto sol =
            exact_stratonovich(strat_config(b, SigmaSpec::constant(1.0), 0.0, grid), path);
        for (double v : sol.values) REQUIRE(v == 0.0);
    }
}

TEST_CASE("stratonovich linear drift closed form", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 1 << 14);
    const auto cfg = strat_config(DriftSpec::linear(1.0), SigmaSpec::constant(1.0), 1.5, grid);
    const auto path = sample_brownian(grid, 103, 0);
    const auto sol = exact_stratonovich(cfg, path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 1024) {
        const double expected = 1.5 * std::exp(grid.node(k) + path.value_at_node(k));
        REQUIRE(sol.values[k] == Catch::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("ito geometric brownian motion closed forms", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 1 << 13);
    const auto path = sample_brownian(grid, 104, 3);

    const auto driftless = exact_ito(ito_config(DriftSpec::zero(), SigmaSpec::constant(1.0),
                                                1.0, grid),
                                     path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 512) {
        const double expected = std::exp(path.value_at_node(k) - 0.5 * grid.node(k));
        REQUIRE(driftless.values[k] == Catch::Approx(expected).epsilon(1e-6));
    }

    const double a = 0.7, s0 = 1.3;
    const auto gbm =
        exact_ito(ito_config(DriftSpec::linear(a), SigmaSpec::constant(s0), 2.0, grid), path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 512) {
        const double expected =
            2.0 * std::exp((a - 0.5 * s0 * s0) * grid.node(k) + s0 * path.value_at_node(k));
        REQUIRE(gbm.values[k] == Catch::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("euler-maruyama strong order 1/2 against the exact solver", "[solvers][mc]") {
    const TimeGrid coarse = make_grid(1.0, 256);
    const std::size_t n_samples = 1500;

    auto strong_error = [&](const DriftSpec& drift, std::size_t refine) {
        const TimeGrid fine(1.0, 256 * refine);
        const SdeConfig cfg_coarse = ito_config(drift, SigmaSpec::constant(1.0), 1.0, coarse);
        const SdeConfig cfg_fine = ito_config(drift, SigmaSpec::constant(1.0), 1.0, fine);
        double acc = 0.0;
        for (std::size_t s = 0; s < n_samples; ++s) {
            const auto fine_path = sample_brownian(fine, 105, s);
            const auto coarse_path = coarsen_path(fine_path, refine);
            const double reference = exact_ito(cfg_coarse, coarse_path).values.back();
            const double em = euler_maruyama(cfg_fine, fine_path).values.back();
            acc += (em - reference) * (em - reference);
        }
        return std::sqrt(acc / static_cast<double>(n_samples));
    };

    // linear drift: the reference is exact, so the ratio isolates EM's order 1/2
    const double e16 = strong_error(DriftSpec::linear(0.5), 16);
    const double e64 = strong_error(DriftSpec::linear(0.5), 64);
    REQUIRE(e64 < e16);
    REQUIRE(e16 / e64 == Catch::Approx(2.0).margin(0.6));

    // nonlinear drift: decay confirmed over two refinements
    const double n16 = strong_error(DriftSpec::affine_sine(0.5, 0.5), 16);
    const double n64 = strong_error(DriftSpec::affine_sine(0.5, 0.5), 64);
    REQUIRE(n64 < n16);
}

TEST_CASE("wz pointwise solves the smoothed ODE in closed form", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 512);
    const Kernel kernel = Kernel::polygonal(grid, 1.0 / 16.0);
    const auto path = sample_brownian(grid, 106, 1);
    const auto cfg = strat_config(DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, grid);

    const auto sol = wz_pointwise(cfg, kernel, path);
    const SmoothedPath sp = smooth_path(kernel, path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 16) {
        REQUIRE(sol.values[k] == Catch::Approx(std::exp(sp.values[k])).epsilon(1e-8));
    }

    // finest polygonal kernel at partition nodes reproduces the Stratonovich solution
    const Kernel finest = Kernel::polygonal(grid, grid.dt());
    const auto sol_finest = wz_pointwise(cfg, finest, path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 32) {
        REQUIRE(sol_finest.values[k] ==
                Catch::Approx(std::exp(path.value_at_node(k))).epsilon(1e-10));
    }
}

TEST_CASE("wz pointwise with linear drift matches the linear-ODE closed form", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 1 << 12);
    const Kernel kernel = Kernel::mollifier(grid, 0.1);
    const auto path = sample_brownian(grid, 107, 2);
    const double a = 1.0;
    const auto cfg = strat_config(DriftSpec::linear(a), SigmaSpec::constant(1.0), 1.0, grid);

    const auto sol = wz_pointwise(cfg, kernel, path);
    const SmoothedPath sp = smooth_path(kernel, path);
    for (std::size_t k = 0; k <= grid.n_steps(); k += 256) {
        const double expected =
            std::exp(a * grid.node(k) + sp.values[k] - sp.values[0]);
        REQUIRE(sol.values[k] == Catch::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("factored and direct wz routes agree", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 1 << 12);
    const auto cfg =
        strat_config(DriftSpec::affine_sine(0.6, 0.5), SigmaSpec::constant(1.0), 1.0, grid);
    for (const Kernel& kernel :
         {Kernel::polygonal(grid, 1.0 / 32.0), Kernel::mollifier(grid, 0.2)}) {
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const auto path = sample_brownian(grid, 108, s);
            const auto factored = wz_pointwise(cfg, kernel, path, WzRoute::Factored);
            const auto direct = wz_pointwise(cfg, kernel, path, WzRoute::Direct);
            worst = std::max(worst, max_rel_diff(factored.values, direct.values));
        }
        INFO(to_string(kernel.family()));
        REQUIRE(worst <= 1e-5);
    }
}

TEST_CASE("wick solver matches the closed-form Wick solution", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 512);
    const auto path = sample_brownian(grid, 109, 4);
    const auto cfg = ito_config(DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, grid);

    const Kernel kernel = Kernel::polygonal(grid, 1.0 / 16.0);
    const auto sol = wz_wick(cfg, kernel, path, 8);
    const SmoothedPath sp = smooth_path(kernel, path);
    REQUIRE(sol.values.front() == 1.0);  // t = 0 initial condition
    for (std::size_t i = 0; i < sol.node_indices.size(); ++i) {
        const std::size_t k = sol.node_indices[i];
        const double expected = std::exp(sp.values[k] - 0.5 * kernel.norm_sq(k));
        REQUIRE(sol.values[i] == Catch::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("translated route equals the closed-form route for both kernels", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 512);
    for (const double a : {0.0, 1.0}) {
        const auto cfg = ito_config(a == 0.0 ? DriftSpec::zero() : DriftSpec::linear(a),
                                    SigmaSpec::constant(1.0), 1.0, grid);
        for (const Kernel& kernel :
             {Kernel::polygonal(grid, 1.0 / 32.0), Kernel::mollifier(grid, 0.1)}) {
            const WickSolver solver(cfg, kernel, 8);
            double worst = 0.0;
            for (std::uint64_t s = 0; s < 10; ++s) {
                const auto path = sample_brownian(grid, 110, s);
                const auto translated = solver.solve(path);
                const auto oracle = wick_closed_form_linear(cfg, kernel, path, 8);
                worst = std::max(worst, max_rel_diff(translated.values, oracle.values));
            }
            INFO(to_string(kernel.family()) << " a=" << a);
            REQUIRE(worst <= 1e-4);
        }
    }
}

TEST_CASE("zero noise degenerates to the deterministic ODE", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 512);
    const auto path = sample_brownian(grid, 111, 5);
    const DriftSpec drift = DriftSpec::affine_sine(0.8, 0.3);
    const SigmaSpec off = SigmaSpec::constant(0.0);

    // reference: RK4 on dx/dt = b(x) with no noise terms at all
    std::vector<double> reference(grid.n_steps() + 1);
    reference[0] = 1.0;
    for (std::size_t j = 0; j < grid.n_steps(); ++j) {
        const double h = grid.dt();
        const double x = reference[j];
        const double t = grid.node(j);
        const double k1 = drift(t, x);
        const double k2 = drift(t + h / 2, x + h / 2 * k1);
        const double k3 = drift(t + h / 2, x + h / 2 * k2);
        const double k4 = drift(t + h, x + h * k3);
        reference[j + 1] = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }

    const auto strat = exact_stratonovich(strat_config(drift, off, 1.0, grid), path);
    const auto ito = exact_ito(ito_config(drift, off, 1.0, grid), path);
    const Kernel kernel = Kernel::polygonal(grid, 1.0 / 16.0);
    const auto wz = wz_pointwise(strat_config(drift, off, 1.0, grid), kernel, path);
    // the Wick correction is sigma^2-scaled, so it vanishes with the noise
    const auto wick = wz_wick(ito_config(drift, off, 1.0, grid), kernel, path, 32);

    REQUIRE(max_rel_diff(strat.values, reference) <= 1e-10);
    REQUIRE(max_rel_diff(ito.values, reference) <= 1e-10);
    REQUIRE(max_rel_diff(wz.values, reference) <= 1e-10);
    for (std::size_t i = 0; i < wick.node_indices.size(); ++i) {
        const double ref = reference[wick.node_indices[i]];
        REQUIRE(wick.values[i] == Catch::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("positive initial data stays positive", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 512);
    const Kernel kernel = Kernel::polygonal(grid, 1.0 / 16.0);
    for (std::uint64_t s = 0; s < 25; ++s) {
        const auto path = sample_brownian(grid, 112, s);
        for (const DriftSpec& drift : {DriftSpec::zero(), DriftSpec::linear(1.0),
                                       DriftSpec::affine_sine(0.5, 0.5),
                                       DriftSpec::logistic_clipped(1.0, 3.0)}) {
            const auto strat =
                exact_stratonovich(strat_config(drift, SigmaSpec::constant(1.0), 0.5, grid), path);
            for (double v : strat.values) REQUIRE(v > 0.0);
            const auto wz = wz_pointwise(strat_config(drift, SigmaSpec::constant(1.0), 0.5, grid),
                                         kernel, path);
            for (double v : wz.values) REQUIRE(v > 0.0);
        }
    }
}

TEST_CASE("interpretation preconditions are enforced", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 64);
    const auto path = sample_brownian(grid, 113, 0);
    const Kernel kernel = Kernel::polygonal(grid, 0.25);
    const auto strat = strat_config(DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, grid);
    const auto ito = ito_config(DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, grid);

    REQUIRE_THROWS_AS(exact_stratonovich(ito, path), std::invalid_argument);
    REQUIRE_THROWS_AS(exact_ito(strat, path), std::invalid_argument);
    REQUIRE_THROWS_AS(wz_pointwise(ito, kernel, path), std::invalid_argument);
    REQUIRE_THROWS_AS(wz_wick(strat, kernel, path), std::invalid_argument);

    const TimeGrid other = make_grid(1.0, 128);
    REQUIRE_THROWS_AS(exact_stratonovich(strat, sample_brownian(other, 1, 0)),
                      std::invalid_argument);
}

TEST_CASE("overflow raises a numeric failure with the first bad node", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 64);
    const auto path = sample_brownian(grid, 114, 0);
    const auto cfg = strat_config(DriftSpec::linear(1e5), SigmaSpec::constant(0.0), 1.0, grid);
    REQUIRE_THROWS_AS(exact_stratonovich(cfg, path), NumericFailure);
    try {
        exact_stratonovich(cfg, path);
    } catch (const NumericFailure& err) {
        REQUIRE(err.node() > 0);
        REQUIRE(err.node() <= 64);
    }
}

TEST_CASE("d_l2norm_dt agrees with finite differences inside partition cells", "[solvers]") {
    const TimeGrid grid = make_grid(1.0, 512);
    const Kernel kernel = Kernel::polygonal(grid, 1.0 / 16.0);
    const double dt = grid.dt();
    for (std::size_t k = 3; k < 512; k += 7) {
        if ((k % 32) == 0 || ((k + 1) % 32) == 0) continue;  // skip partition boundaries
        const double fd = (kernel.norm_sq(k + 1) - kernel.norm_sq(k)) / dt;
        const double mid = 0.5 * (d_l2norm_dt(kernel, k) + d_l2norm_dt(kernel, k + 1));
        REQUIRE(fd == Catch::Approx(mid).margin(1e-10));
    }
}
