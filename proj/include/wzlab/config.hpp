#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wzlab/kernel.hpp"
#include "wzlab/rate.hpp"
#include "wzlab/sde.hpp"

namespace wzlab {

/// Configuration problem; the message names the offending section/key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Parsed experiment configuration.
 *
 * The on-disk format is a line-based key = value file with [section] headers
 * and '#' comments; see README for the grammar. Sections: grid, kernel, sde,
 * mc, output.
 */
struct ExperimentConfig {
    // [grid]
    double horizon = 1.0;
    std::size_t n_steps = 256;
    // [kernel]
    KernelFamily kernel_family = KernelFamily::Polygonal;
    std::vector<double> epsilons;
    // [sde]
    std::string drift_name = "zero";
    double drift_a = 0.0;
    double drift_c = 0.0;
    double drift_cap = 1.0;
    std::string sigma_name = "constant";
    double sigma_value = 1.0;
    std::vector<double> sigma_values;
    double sigma_base = 1.0;
    double sigma_amplitude = 0.0;
    double sigma_frequency = 1.0;
    double x0 = 1.0;
    SdeInterpretation interpretation = SdeInterpretation::Stratonovich;
    // [mc]
    double p = 2.0;
    double q = 3.0;
    std::size_t n_samples = 1000;
    std::uint64_t seed = 0;
    bool seed_explicit = false;
    // [output]
    std::string csv_path;
    std::string svg_path;
    std::size_t subsample = 1;
};

/// Parse and validate; throws ConfigError.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Cross-field validation shared by every subcommand (q > p, decreasing
/// epsilons, known families); throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

TimeGrid grid_from(const ExperimentConfig& cfg);
DriftSpec drift_from(const ExperimentConfig& cfg);
SigmaSpec sigma_from(const ExperimentConfig& cfg);
SdeConfig sde_from(const ExperimentConfig& cfg);
Kernel kernel_from(const ExperimentConfig& cfg, double epsilon);

SolverPair pair_from(const ExperimentConfig& cfg);

}  // namespace wzlab
