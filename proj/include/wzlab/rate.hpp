#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wzlab/kernel.hpp"
#include "wzlab/sde.hpp"

namespace wzlab {

/// Rate function S_q(lambda) = lambda e^{q lambda^2} + e^{lambda^2 / 2} - 1.
/// Behaves like lambda near zero, so the convergence order equals the kernel
/// distance order. Requires lambda >= 0, q >= 1.
double s_q(double lambda, double q);

enum class SolverPair { StratonovichVsWz, ItoVsWick };

std::string to_string(SolverPair pair);

/// Argument fed to S_q for a given pair: delta for the Stratonovich pair,
/// sqrt(2) * delta for the Wick pair.
double bound_argument(SolverPair pair, double delta);

struct ErrorPoint {
    double epsilon;
    double delta;       // kernel distance delta(eps)
    double error;       // estimated sup_t ||X^eps_t - X_t||_p
    double std_error;   // delta-method standard error at the argmax node
    std::size_t n_samples;
};

struct ErrorCurve {
    SolverPair pair;
    double p;
    std::vector<ErrorPoint> points;
};

struct RateFit {
    double slope;
    double intercept;
    double r_squared;
    double fitted_c;  // max_i error_i / S_q(arg_i)
    double q;
};

/// Ordinary least squares of log(error) on log(delta). Requires at least
/// three points with positive error and delta; throws std::invalid_argument
/// otherwise.
RateFit fit_rate(const ErrorCurve& curve, double q);

struct BoundCheckReport {
    double fitted_c;
    bool all_points_within;  // error_i <= fitted_c * S_q(arg_i) + 3 se_i
};

/// Fits one global constant for the curve and re-verifies every point
/// against it. Requires q > curve.p (the theorems ask for q greater than p).
BoundCheckReport bound_check(const ErrorCurve& curve, double q);

struct McOptions {
    double p = 2.0;
    std::size_t n_samples = 1000;
    std::uint64_t seed = 0;
    std::size_t jobs = 0;       // 0 = hardware concurrency
    std::size_t subsample = 1;  // output-node stride for the Wick route
};

/// Monte Carlo estimate of sup_t ||X^eps_t - X_t||_p for one kernel, with
/// common random numbers: both solvers run on the same sampled path. The
/// per-node p-th moments are accumulated in fixed-size blocks and combined
/// pairwise in block order, so the result is independent of the worker
/// schedule. The standard error is the delta-method value at the argmax node.
ErrorPoint mc_error(SolverPair pair, const SdeConfig& cfg, const Kernel& kernel,
                    const McOptions& opts);

/// Exact sup_t ||X^eps_t - X_t||_2 over the sampled output nodes for
/// Zero/Linear drift and constant sigma, from the Gaussian closed forms of
/// exponential moments (no sampling, no ODE solver involved).
ErrorPoint closed_form_error(SolverPair pair, const SdeConfig& cfg, const Kernel& kernel,
                             std::size_t subsample = 1);

/// Per-node version of the above, at grid node k.
double closed_form_node_error(SolverPair pair, const SdeConfig& cfg, const Kernel& kernel,
                              std::size_t k);

}  // namespace wzlab
