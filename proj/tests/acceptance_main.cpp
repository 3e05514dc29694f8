// Acceptance suite: one criterion per line, every tolerance pinned in code.
// Exit code 0 iff all criteria pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wzlab/experiments.hpp"
#include "wzlab/rate.hpp"

using namespace wzlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int number;
    std::string title;
    double time_limit_s;
    std::function<Outcome()> run;
};

bool g_all_pass = true;

void report(const Criterion& c, const Outcome& outcome, double elapsed) {
    const bool timed_out = elapsed > c.time_limit_s;
    const bool pass = outcome.pass && !timed_out;
    g_all_pass = g_all_pass && pass;
    std::printf("[%s] criterion %d: %s (%.2f s%s)%s%s\n", pass ? "PASS" : "FAIL", c.number,
                c.title.c_str(), elapsed, timed_out ? ", over budget" : "",
                outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
    std::fflush(stdout);
}

std::string strip_comment_lines(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) continue;
        out << line << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// criterion 1: polygonal kernel distance sqrt(mesh)/2 to 1e-12
Outcome criterion_polygonal_delta() {
    Outcome out;
    const TimeGrid grid(1.0, 512);
    std::ostringstream detail;
    for (int k = 2; k <= 8; ++k) {
        const double mesh = std::pow(2.0, -k);
        const Kernel kernel = Kernel::polygonal(grid, mesh);
        const double expected = std::sqrt(mesh) / 2.0;
        const double closed = kernel.delta_distance();
        // non-circular: max of the table distances over grid nodes; the
        // mid-partition node realizes mesh * theta(1-theta) at theta = 1/2
        double table_max = 0.0;
        for (std::size_t node = 0; node <= grid.n_steps(); ++node) {
            table_max = std::max(table_max, kernel.node_indicator_distance(node));
        }
        if (std::abs(closed - expected) > 1e-12 || std::abs(table_max - expected) > 1e-12) {
            out.pass = false;
            detail << "mesh 2^-" << k << ": closed " << closed << " table " << table_max
                   << " expected " << expected << "; ";
        }
    }
    out.detail = detail.str();
    if (out.pass) out.detail = "7 meshes, closed form and table max both at sqrt(mesh)/2";
    return out;
}

// shared benchmark configuration: b = 0, sigma = 1, x = 1, T = 1, n = 512
SdeConfig benchmark_sde(SdeInterpretation interpretation) {
    return SdeConfig{DriftSpec::zero(), SigmaSpec::constant(1.0), 1.0, TimeGrid(1.0, 512),
                     interpretation};
}

std::vector<double> dyadic_meshes() {
    return {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0};
}

// criterion 2: dense closed-form curve drives the slope; MC (common random
// numbers, 10^4 samples) must sit within 3 standard errors of it everywhere.
Outcome criterion_stratonovich_rate() {
    Outcome out;
    std::ostringstream detail;
    const SdeConfig sde = benchmark_sde(SdeInterpretation::Stratonovich);
    ErrorCurve closed{SolverPair::StratonovichVsWz, 2.0, {}};
    for (const double mesh : dyadic_meshes()) {
        const Kernel kernel = Kernel::polygonal(sde.grid, mesh);
        closed.points.push_back(closed_form_error(SolverPair::StratonovichVsWz, sde, kernel, 1));
        const ErrorPoint mc = mc_error(SolverPair::StratonovichVsWz, sde, kernel,
                                       McOptions{2.0, 10000, 93101, 0, 1});
        const double diff = std::abs(mc.error - closed.points.back().error);
        if (diff > 3.0 * mc.std_error) {
            out.pass = false;
            detail << "mesh " << mesh << ": MC " << mc.error << " vs closed "
                   << closed.points.back().error << " beyond 3 se (" << mc.std_error << "); ";
        }
    }
    const RateFit fit = fit_rate(closed, 3.0);
    if (fit.slope < 0.9 || fit.slope > 1.1) {
        out.pass = false;
        detail << "closed-form slope " << fit.slope << " outside [0.9, 1.1]; ";
    }
    if (out.pass) detail << "slope " << fit.slope << ", MC within 3 se at every mesh";
    out.detail = detail.str();
    return out;
}

// criterion 3: the closed-form stochastic-exponential curve carries the slope
// and the bound check; the O(n^2) Wick route runs at subsample 4. At the two
// finest meshes every fourth node is a partition node, where the Wick
// approximation coincides with the truth for b = 0, so the subsampled error
// is asserted to be at solver-tolerance scale instead of 3-se agreement.
Outcome criterion_wick_rate() {
    Outcome out;
    std::ostringstream detail;
    constexpr std::size_t kStride = 4;
    const SdeConfig sde = benchmark_sde(SdeInterpretation::Ito);
    ErrorCurve closed{SolverPair::ItoVsWick, 2.0, {}};
    for (const double mesh : dyadic_meshes()) {
        const Kernel kernel = Kernel::polygonal(sde.grid, mesh);
        closed.points.push_back(closed_form_error(SolverPair::ItoVsWick, sde, kernel, 1));
        const ErrorPoint mc = mc_error(SolverPair::ItoVsWick, sde, kernel,
                                       McOptions{2.0, 10000, 93103, 0, kStride});
        const auto cells_per_partition =
            static_cast<std::size_t>(std::llround(mesh / sde.grid.dt()));
        if (cells_per_partition >= 2 * kStride) {
            // the subsampled lattice sees mid-partition nodes: compare against
            // the closed form restricted to the same lattice
            const ErrorPoint cf_sub =
                closed_form_error(SolverPair::ItoVsWick, sde, kernel, kStride);
            if (std::abs(mc.error - cf_sub.error) > 3.0 * mc.std_error) {
                out.pass = false;
                detail << "mesh " << mesh << ": MC " << mc.error << " vs closed " << cf_sub.error
                       << " beyond 3 se (" << mc.std_error << "); ";
            }
        } else if (mc.error > 1e-6) {
            out.pass = false;
            detail << "mesh " << mesh << ": partition-aligned lattice should measure ~0, got "
                   << mc.error << "; ";
        }
    }

    const RateFit fit = fit_rate(closed, 3.0);
    if (fit.slope < 0.9 || fit.slope > 1.1) {
        out.pass = false;
        detail << "closed-form slope " << fit.slope << " outside [0.9, 1.1]; ";
    }
    // one global fitted constant at q = 3 > p = 2, stable under halving the
    // epsilon range
    const BoundCheckReport full = bound_check(closed, 3.0);
    ErrorCurve coarse_half{SolverPair::ItoVsWick, 2.0,
                           {closed.points.begin(), closed.points.begin() + 3}};
    ErrorCurve fine_half{SolverPair::ItoVsWick, 2.0,
                         {closed.points.end() - 3, closed.points.end()}};
    const double c_coarse = bound_check(coarse_half, 3.0).fitted_c;
    const double c_fine = bound_check(fine_half, 3.0).fitted_c;
    if (!full.all_points_within || !std::isfinite(full.fitted_c)) {
        out.pass = false;
        detail << "bound check failed; ";
    }
    if (std::abs(c_coarse - full.fitted_c) > 0.2 * full.fitted_c ||
        std::abs(c_fine - full.fitted_c) > 0.2 * full.fitted_c) {
        out.pass = false;
        detail << "fitted C unstable: full " << full.fitted_c << " halves " << c_coarse << " / "
               << c_fine << "; ";
    }
    if (out.pass) {
        detail << "slope " << fit.slope << ", fitted C " << full.fitted_c
               << " stable, Wick route checked at subsample 4";
    }
    out.detail = detail.str();
    return out;
}

// criterion 4: translated-route vs closed-form-route equality at n = 2^12
Outcome criterion_route_equality() {
    Outcome out;
    std::ostringstream detail;
    const TimeGrid grid(1.0, 4096);
    constexpr std::size_t kStride = 16;
    constexpr double kTol = 1e-4;
    double overall_worst = 0.0;
    for (const double a : {0.0, 1.0}) {
        const SdeConfig sde{a == 0.0 ? DriftSpec::zero() : DriftSpec::linear(a),
                            SigmaSpec::constant(1.0), 1.0, grid, SdeInterpretation::Ito};
        for (const bool polygonal : {true, false}) {
            const Kernel kernel = polygonal ? Kernel::polygonal(grid, 1.0 / 32.0)
                                            : Kernel::mollifier(grid, 0.1);
            const WickSolver solver(sde, kernel, kStride);
            double worst = 0.0;
            for (std::uint64_t s = 0; s < 10; ++s) {
                const BrownianPath path = sample_brownian(grid, 404, s);
                const PathSolution translated = solver.solve(path);
                const PathSolution oracle = wick_closed_form_linear(sde, kernel, path, kStride);
                for (std::size_t i = 0; i < translated.values.size(); ++i) {
                    const double lhs = translated.values[i];
                    const double rhs = oracle.values[i];
                    worst = std::max(worst, std::abs(lhs - rhs) /
                                                std::max({std::abs(lhs), std::abs(rhs), 1e-12}));
                }
            }
            overall_worst = std::max(overall_worst, worst);
            if (worst > kTol) {
                out.pass = false;
                detail << to_string(kernel.family()) << " a=" << a << ": " << worst << " > 1e-4; ";
            }
        }
    }
    if (out.pass) {
        detail << "both kernels, a in {0,1}, max relative discrepancy " << overall_worst;
    }
    out.detail = detail.str();
    return out;
}

Outcome subset_outcome(const std::vector<CheckRow>& rows, const std::vector<std::string>& names) {
    Outcome out;
    std::ostringstream detail;
    for (const std::string& name : names) {
        bool found = false;
        for (const CheckRow& row : rows) {
            if (row.name != name) continue;
            found = true;
            if (!row.pass) {
                out.pass = false;
                detail << name << " discrepancy " << row.discrepancy << " tol " << row.tolerance
                       << "; ";
            }
        }
        if (!found) {
            out.pass = false;
            detail << name << " missing; ";
        }
    }
    if (out.pass) detail << names.size() << " checks passed";
    out.detail = detail.str();
    return out;
}

// criterion 8: rerunning the shipped Stratonovich config reproduces the CSV
Outcome criterion_determinism() {
    Outcome out;
    const std::string path = std::string(WZLAB_SOURCE_DIR) + "/configs/converge_stratonovich.ini";
    const ExperimentConfig cfg = parse_config_file(path);
    RunOptions first;
    RunOptions second;
    second.jobs = 3;  // a different schedule must not change the bytes
    const ConvergeOutcome a = run_converge(cfg, first);
    const ConvergeOutcome b = run_converge(cfg, second);
    std::ostringstream detail;
    if (a.result.exit_code != kExitOk || b.result.exit_code != kExitOk) {
        out.pass = false;
        detail << "converge exit codes " << a.result.exit_code << " / " << b.result.exit_code
               << "; ";
    }
    if (strip_comment_lines(a.result.csv) != strip_comment_lines(b.result.csv)) {
        out.pass = false;
        detail << "CSV bodies differ between reruns; ";
    }
    if (a.fit.slope < 0.9 || a.fit.slope > 1.1) {
        out.pass = false;
        detail << "golden config slope " << a.fit.slope << " outside [0.9, 1.1]; ";
    }
    if (out.pass) {
        detail << "byte-identical reruns (different schedules), slope " << a.fit.slope;
    }
    out.detail = detail.str();
    return out;
}

}  // namespace

int main() {
    std::printf("wzlab acceptance suite\n");

    // the identity suite backs criteria 5, 6 and 7; run it once
    std::vector<CheckRow> suite_rows;
    double suite_elapsed = 0.0;
    {
        const auto t0 = std::chrono::steady_clock::now();
        suite_rows = wick_identity_suite(TimeGrid(1.0, 256), 42);
        suite_elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    const std::vector<Criterion> criteria = {
        {1, "polygonal kernel distance sqrt(mesh)/2", 1.0, criterion_polygonal_delta},
        {2, "Stratonovich rate: slope in [0.9,1.1], MC within 3 se", 120.0,
         criterion_stratonovich_rate},
        {3, "Ito/Wick rate: slope, bound check, stable fitted C", 300.0, criterion_wick_rate},
        {4, "translated-route equality at n=2^12, both kernels", 120.0,
         criterion_route_equality},
        {5, "Wick-algebra identity suite", 60.0,
         [&] {
             return subset_outcome(suite_rows,
                                   {"gjessing_span", "translate_wick_inverse",
                                    "gamma_inverse_identity", "translate_composition",
                                    "translate_shift_consistency", "p2_norm_mc",
                                    "sq_zero_and_value", "sq_monotone",
                                    "sq_small_lambda_ratio"});
         }},
        {6, "translation chain rule by finite differences", 60.0,
         [&] { return subset_outcome(suite_rows, {"translation_chain_rule"}); }},
        {7, "S_p bound sweeps with one fitted constant", 60.0,
         [&] {
             return subset_outcome(suite_rows, {"plain_exp_distance_sweep", "stoch_exp_distance_sweep", "inverse_exp_distance_sweep",
                                                "translation_lipschitz_sweep"});
         }},
        {8, "determinism: rerun reproduces the CSV byte-for-byte", 120.0,
         criterion_determinism},
    };

    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& err) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + err.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.number == 5) elapsed += suite_elapsed;  // shared suite run
        report(c, outcome, elapsed);
    }

    std::printf("%s\n", g_all_pass ? "acceptance: all criteria passed"
                                   : "acceptance: FAILURES present");
    return g_all_pass ? 0 : 1;
}
