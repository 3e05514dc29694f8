#include "wzlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace wzlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size() || v < 0) throw std::invalid_argument("bad integer");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value +
                          "' as a nonnegative integer");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': list must not be empty");
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;

        if (full == "grid.T") {
            cfg.horizon = parse_double(full, value);
        } else if (full == "grid.n_steps") {
            cfg.n_steps = parse_size(full, value);
        } else if (full == "kernel.family") {
            if (value == "polygonal") {
                cfg.kernel_family = KernelFamily::Polygonal;
            } else if (value == "mollifier") {
                cfg.kernel_family = KernelFamily::Mollifier;
            } else {
                throw ConfigError("config key 'kernel.family': unknown family '" + value + "'");
            }
        } else if (full == "kernel.epsilons") {
            cfg.epsilons = parse_list(full, value);
        } else if (full == "sde.drift") {
            cfg.drift_name = value;
        } else if (full == "sde.drift_a") {
            cfg.drift_a = parse_double(full, value);
        } else if (full == "sde.drift_c") {
            cfg.drift_c = parse_double(full, value);
        } else if (full == "sde.drift_cap") {
            cfg.drift_cap = parse_double(full, value);
        } else if (full == "sde.sigma") {
            cfg.sigma_name = value;
        } else if (full == "sde.sigma_value") {
            cfg.sigma_value = parse_double(full, value);
        } else if (full == "sde.sigma_values") {
            cfg.sigma_values = parse_list(full, value);
        } else if (full == "sde.sigma_base") {
            cfg.sigma_base = parse_double(full, value);
        } else if (full == "sde.sigma_amplitude") {
            cfg.sigma_amplitude = parse_double(full, value);
        } else if (full == "sde.sigma_frequency") {
            cfg.sigma_frequency = parse_double(full, value);
        } else if (full == "sde.x0") {
            cfg.x0 = parse_double(full, value);
        } else if (full == "sde.interpretation") {
            if (value == "stratonovich") {
                cfg.interpretation = SdeInterpretation::Stratonovich;
            } else if (value == "ito") {
                cfg.interpretation = SdeInterpretation::Ito;
            } else {
                throw ConfigError(
                    "config key 'sde.interpretation': expected 'stratonovich' or 'ito', got '" +
                    value + "'");
            }
        } else if (full == "mc.p") {
            cfg.p = parse_double(full, value);
        } else if (full == "mc.q") {
            cfg.q = parse_double(full, value);
        } else if (full == "mc.n_samples") {
            cfg.n_samples = parse_size(full, value);
        } else if (full == "mc.seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_size(full, value));
            cfg.seed_explicit = true;
        } else if (full == "output.csv") {
            cfg.csv_path = value;
        } else if (full == "output.svg") {
            cfg.svg_path = value;
        } else if (full == "output.subsample") {
            cfg.subsample = parse_size(full, value);
            if (cfg.subsample == 0) cfg.subsample = 1;
        } else {
            throw ConfigError("config key '" + full + "' is not recognized");
        }
    }
    if (!cfg.seed_explicit) {
        if (const char* env = std::getenv("WZLAB_SEED")) {
            cfg.seed = static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    if (!(cfg.horizon > 0.0)) throw ConfigError("config key 'grid.T' must be positive");
    if (cfg.n_steps == 0) throw ConfigError("config key 'grid.n_steps' must be at least 1");
    if (!(cfg.q > cfg.p)) {
        throw ConfigError("config keys 'mc.q' and 'mc.p': the theorems require q greater than p");
    }
    if (cfg.p < 1.0) throw ConfigError("config key 'mc.p' must be at least 1");
    if (!cfg.epsilons.empty()) {
        for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
            if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) {
                throw ConfigError("config key 'kernel.epsilons' must be strictly decreasing");
            }
        }
        if (cfg.epsilons.back() <= 0.0) {
            throw ConfigError("config key 'kernel.epsilons' must be positive");
        }
    }
    if (cfg.drift_name != "zero" && cfg.drift_name != "linear" && cfg.drift_name != "affine_sine" &&
        cfg.drift_name != "logistic_clipped") {
        throw ConfigError("config key 'sde.drift': unknown family '" + cfg.drift_name + "'");
    }
    if (cfg.sigma_name != "constant" && cfg.sigma_name != "piecewise_constant" &&
        cfg.sigma_name != "sine") {
        throw ConfigError("config key 'sde.sigma': unknown family '" + cfg.sigma_name + "'");
    }
}

TimeGrid grid_from(const ExperimentConfig& cfg) { return TimeGrid(cfg.horizon, cfg.n_steps); }

DriftSpec drift_from(const ExperimentConfig& cfg) {
    if (cfg.drift_name == "zero") return DriftSpec::zero();
    if (cfg.drift_name == "linear") return DriftSpec::linear(cfg.drift_a);
    if (cfg.drift_name == "affine_sine") return DriftSpec::affine_sine(cfg.drift_a, cfg.drift_c);
    if (cfg.drift_name == "logistic_clipped") {
        return DriftSpec::logistic_clipped(cfg.drift_a, cfg.drift_cap);
    }
    throw ConfigError("config key 'sde.drift': unknown family '" + cfg.drift_name + "'");
}

SigmaSpec sigma_from(const ExperimentConfig& cfg) {
    if (cfg.sigma_name == "constant") return SigmaSpec::constant(cfg.sigma_value);
    if (cfg.sigma_name == "piecewise_constant") {
        if (cfg.sigma_values.empty()) {
            throw ConfigError("config key 'sde.sigma_values' is required for piecewise sigma");
        }
        return SigmaSpec::piecewise_constant(cfg.sigma_values, cfg.horizon);
    }
    if (cfg.sigma_name == "sine") {
        return SigmaSpec::sine(cfg.sigma_base, cfg.sigma_amplitude, cfg.sigma_frequency);
    }
    throw ConfigError("config key 'sde.sigma': unknown family '" + cfg.sigma_name + "'");
}

SdeConfig sde_from(const ExperimentConfig& cfg) {
    return SdeConfig{drift_from(cfg), sigma_from(cfg), cfg.x0, grid_from(cfg),
                     cfg.interpretation};
}

Kernel kernel_from(const ExperimentConfig& cfg, double epsilon) {
    const TimeGrid grid = grid_from(cfg);
    try {
        return cfg.kernel_family == KernelFamily::Polygonal ? Kernel::polygonal(grid, epsilon)
                                                            : Kernel::mollifier(grid, epsilon);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config key 'kernel.epsilons': ") + err.what());
    }
}

SolverPair pair_from(const ExperimentConfig& cfg) {
    return cfg.interpretation == SdeInterpretation::Ito ? SolverPair::ItoVsWick
                                                        : SolverPair::StratonovichVsWz;
}

}  // namespace wzlab
