#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wzlab/config.hpp"
#include "wzlab/rate.hpp"

namespace wzlab {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitNumeric = 3;

struct RunOptions {
    std::size_t jobs = 0;  // 0 = hardware concurrency
    std::optional<std::uint64_t> seed_override;
    std::string out_override;
    std::string svg_override;
    bool quiet = false;
    std::optional<std::string> only_check;  // wick-check row filter
    bool corrupt_translate = false;         // test hook: perturb translate results
};

struct RunResult {
    int exit_code = kExitOk;
    std::string csv;      // body without the timestamp comment line
    std::string message;  // human-readable status for the console
};

/// One row of an identity-check report.
struct CheckRow {
    std::string name;
    double discrepancy;
    double tolerance;
    bool pass;
};

/// The Wick-calculus identity suite on the given grid. `corrupt_translate`
/// deliberately perturbs translation coefficients so the failure path is
/// exercisable from tests.
std::vector<CheckRow> wick_identity_suite(const TimeGrid& grid, std::uint64_t seed,
                                          bool corrupt_translate = false);

struct ConvergeOutcome {
    RunResult result;
    ErrorCurve curve;
    RateFit fit;
    BoundCheckReport bound;
};

/// Monte Carlo convergence experiment over the config's epsilon ladder;
/// emits data rows plus a "#summary," row.
ConvergeOutcome run_converge(const ExperimentConfig& cfg, const RunOptions& opts);

/// Identity-check report as CSV; nonzero exit when any row fails.
RunResult run_wick_check(const ExperimentConfig& cfg, const RunOptions& opts);

/// Translated-route vs closed-form-route equality for the Wick approximation
/// (Zero/Linear drift only).
RunResult run_theorem3_check(const ExperimentConfig& cfg, const RunOptions& opts);

/// Dump one trajectory set (exact and approximate) for eyeballing.
RunResult run_simulate(const ExperimentConfig& cfg, const RunOptions& opts);

/// Write result CSV (prefixed with a timestamp comment) and optional SVG.
void write_outputs(const RunResult& result, const std::string& command,
                   const ExperimentConfig& cfg, const RunOptions& opts,
                   const ConvergeOutcome* converge = nullptr);

}  // namespace wzlab
