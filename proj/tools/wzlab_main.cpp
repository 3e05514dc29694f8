#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wzlab/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::size_t jobs = 0;
    std::string out_path;
    std::string svg_path;
    bool quiet = false;
    long long seed = -1;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Experiment config file")->required();
    cmd->add_option("--jobs", args.jobs, "Worker threads (default: logical cores)");
    cmd->add_option("--out", args.out_path, "CSV output path (overrides config)");
    cmd->add_option("--svg", args.svg_path, "SVG plot path (overrides config)");
    cmd->add_flag("--quiet", args.quiet, "Suppress console status lines");
    cmd->add_option("--seed", args.seed, "Seed override")->check(CLI::NonNegativeNumber);
}

wzlab::RunOptions to_run_options(const CommonArgs& args) {
    wzlab::RunOptions opts;
    opts.jobs = args.jobs;
    opts.out_override = args.out_path;
    opts.svg_override = args.svg_path;
    opts.quiet = args.quiet;
    if (args.seed >= 0) opts.seed_override = static_cast<std::uint64_t>(args.seed);
    return opts;
}

int finish(const wzlab::RunResult& result, const std::string& command,
           const wzlab::ExperimentConfig& cfg, const wzlab::RunOptions& opts,
           const wzlab::ConvergeOutcome* converge = nullptr) {
    wzlab::write_outputs(result, command, cfg, opts, converge);
    const std::string csv_target = !opts.out_override.empty() ? opts.out_override : cfg.csv_path;
    if (csv_target.empty() && !result.csv.empty()) {
        std::cout << result.csv;
    }
    if (!opts.quiet && !result.message.empty()) {
        std::cerr << result.message << '\n';
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wzlab: Wong-Zakai approximation experiments for quasi-linear SDEs"};
    app.require_subcommand(1);

    CommonArgs simulate_args, converge_args, wick_args, theorem_args;
    std::string only_check;
    bool corrupt_translate = false;

    CLI::App* simulate = app.add_subcommand("simulate", "Dump one trajectory set");
    add_common(simulate, simulate_args);

    CLI::App* converge = app.add_subcommand("converge", "Measure L^p convergence rates");
    add_common(converge, converge_args);

    CLI::App* wick = app.add_subcommand("wick-check", "Run the Wick-calculus identity suite");
    add_common(wick, wick_args);
    wick->add_option("--only", only_check, "Run a single named identity check");
    wick->add_flag("--corrupt-translate", corrupt_translate,
                   "Test hook: perturb translation results to exercise the failure path")
        ->group("");  // hidden

    CLI::App* theorem = app.add_subcommand(
        "theorem3-check", "Verify the translated-solution representation route equality");
    add_common(theorem, theorem_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const auto cfg = wzlab::parse_config_file(simulate_args.config_path);
            const auto opts = to_run_options(simulate_args);
            return finish(wzlab::run_simulate(cfg, opts), "simulate", cfg, opts);
        }
        if (converge->parsed()) {
            const auto cfg = wzlab::parse_config_file(converge_args.config_path);
            const auto opts = to_run_options(converge_args);
            const auto outcome = wzlab::run_converge(cfg, opts);
            return finish(outcome.result, "converge", cfg, opts, &outcome);
        }
        if (wick->parsed()) {
            const auto cfg = wzlab::parse_config_file(wick_args.config_path);
            auto opts = to_run_options(wick_args);
            if (!only_check.empty()) opts.only_check = only_check;
            opts.corrupt_translate = corrupt_translate;
            return finish(wzlab::run_wick_check(cfg, opts), "wick-check", cfg, opts);
        }
        if (theorem->parsed()) {
            const auto cfg = wzlab::parse_config_file(theorem_args.config_path);
            const auto opts = to_run_options(theorem_args);
            return finish(wzlab::run_theorem3_check(cfg, opts), "theorem3-check", cfg, opts);
        }
    } catch (const wzlab::ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return wzlab::kExitUsage;
    } catch (const wzlab::NumericFailure& err) {
        std::cerr << "numeric failure: " << err.what() << '\n';
        return wzlab::kExitNumeric;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return wzlab::kExitUsage;
    }
    return wzlab::kExitUsage;
}
