#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wzlab/brownian.hpp"
#include "wzlab/kernel.hpp"
#include "wzlab/time_grid.hpp"

namespace wzlab {

enum class DriftFamily { Zero, Linear, AffineSine, LogisticClipped };

/**
 * @brief Drift b(t, x) with certified Lipschitz and linear-growth constants.
 *
 * Families (all autonomous):
 *  - Zero:            b = 0,                      C1 = C2 = 0
 *  - Linear(a):       b = a x,                    C1 = C2 = |a|
 *  - AffineSine(a,c): b = a x + c sin(x),         C1 = C2 = |a| + |c|
 *  - LogisticClipped(a,cap): b = a y (1 - y/cap) with y = clamp(x, 0, cap),
 *                     C1 = |a|, C2 = |a| cap / 4 (the drift is bounded)
 */
class DriftSpec {
public:
    static DriftSpec zero();
    static DriftSpec linear(double a);
    static DriftSpec affine_sine(double a, double c);
    static DriftSpec logistic_clipped(double a, double cap);

    double operator()(double t, double x) const;
    DriftFamily family() const noexcept { return family_; }
    double lipschitz() const noexcept { return c1_; }
    double growth() const noexcept { return c2_; }
    double param_a() const noexcept { return a_; }
    double param_c() const noexcept { return c_; }

private:
    DriftSpec(DriftFamily family, double a, double c, double c1, double c2);
    DriftFamily family_;
    double a_, c_;
    double c1_, c2_;
};

enum class SigmaFamily { Constant, PiecewiseConstant, Sine };

/**
 * @brief Bounded deterministic diffusion coefficient sigma(t).
 *
 * PiecewiseConstant takes its values on equal subintervals of [0, T];
 * Sine is base + amplitude * sin(frequency * t).
 */
class SigmaSpec {
public:
    static SigmaSpec constant(double value);
    static SigmaSpec piecewise_constant(std::vector<double> values, double horizon);
    static SigmaSpec sine(double base, double amplitude, double frequency);

    double operator()(double t) const;
    SigmaFamily family() const noexcept { return family_; }
    double sup_norm() const noexcept { return sup_norm_; }
    bool is_constant() const noexcept { return family_ == SigmaFamily::Constant; }
    double constant_value() const;

private:
    SigmaFamily family_ = SigmaFamily::Constant;
    double value_ = 0.0, base_ = 0.0, amplitude_ = 0.0, frequency_ = 0.0;
    double horizon_ = 0.0;
    std::vector<double> values_;
    double sup_norm_ = 0.0;
};

enum class SdeInterpretation { Stratonovich, Ito };

struct SdeConfig {
    DriftSpec drift;
    SigmaSpec sigma;
    double x0;
    TimeGrid grid;
    SdeInterpretation interpretation;
};

enum class SolutionKind {
    ExactStratonovich,
    ExactIto,
    WzPointwise,
    WzWick,
    ClosedForm,
    FineEuler
};

/**
 * @brief Sampled trajectory at grid nodes t_{i * stride}, i = 0..n_points-1,
 * with the terminal node always included. stride == 1 for dense output.
 */
struct PathSolution {
    TimeGrid grid;
    std::size_t node_stride = 1;
    std::vector<std::size_t> node_indices;
    std::vector<double> values;
    SolutionKind kind;

    std::size_t n_points() const noexcept { return values.size(); }
};

/// Raised when an ODE state leaves the finite range; carries the first bad node.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, std::size_t node) : std::runtime_error(what), node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Quasi-linear Stratonovich SDE dX = b dt + sigma(t) X o dB via the factored
/// representation X = Z * exp{I_sigma(t)} with dZ/dt = b(t, Z e^{I}) e^{-I},
/// I_sigma(t) = int_0^t sigma dB; Z is integrated by classical RK4 with the
/// stochastic exponent linearly interpolated at stage times.
PathSolution exact_stratonovich(const SdeConfig& cfg, const BrownianPath& path);

/// Ito SDE dY = b dt + sigma(t) Y dB, solved through its Stratonovich
/// reformulation with corrected drift b - sigma(t)^2 y / 2.
PathSolution exact_ito(const SdeConfig& cfg, const BrownianPath& path);

enum class WzRoute { Factored, Direct };

/// Wong-Zakai pointwise approximation: dX/dt = b + sigma(t) X dB^eps/dt.
/// The factored route (default) removes the stiff noise factor; the direct
/// route integrates the ODE as written and is kept for cross-validation.
PathSolution wz_pointwise(const SdeConfig& cfg, const Kernel& kernel, const BrownianPath& path,
                          WzRoute route = WzRoute::Factored);

/**
 * @brief Wick Wong-Zakai solver (Ito-side approximation).
 *
 * For each output node t_k the solution is the translated auxiliary process
 * Y^eps_{t_k} = T_{-sigma K(t_k,.)} S_{t_k}, with S solving
 *   dS/dt = b(t,S) + (sigma(t)^2 / 2) d|K(t,.)|^2/dt * S + sigma(t) S dB^eps/dt
 * along the shifted path. The shift makes the cost O(n) per output node, so
 * O(n^2 / stride) per path; shift inner products <dK(t_j,.), K(t_k,.)> are
 * path independent and precomputed here, once per kernel.
 *
 * Exact for constant sigma; non-constant sigma uses sigma(t_k)-scaled shifts
 * and is exploratory.
 */
class WickSolver {
public:
    WickSolver(const SdeConfig& cfg, const Kernel& kernel, std::size_t subsample = 1);

    PathSolution solve(const BrownianPath& path) const;
    const std::vector<std::size_t>& output_nodes() const noexcept { return output_nodes_; }

private:
    const SdeConfig cfg_;
    const Kernel& kernel_;
    std::size_t subsample_;
    std::vector<std::size_t> output_nodes_;
    // shift_gram_[i][j] = <dK(t_j,.), K(t_{k_i},.)>, k_i = output_nodes_[i]
    std::vector<std::vector<double>> shift_gram_;
    std::vector<double> sigma_cells_;  // sigma at cell midpoints
};

/// One-call convenience wrapper around WickSolver.
PathSolution wz_wick(const SdeConfig& cfg, const Kernel& kernel, const BrownianPath& path,
                     std::size_t subsample = 1);

/// Correction coefficient d|K_eps(t,.)|^2/dt at a grid node (left limit),
/// computed as 2 <K(t,.), dK/dt(t,.)> from the tables.
double d_l2norm_dt(const Kernel& kernel, std::size_t k);

/// Closed-form Wick solution for Zero/Linear drift and constant sigma:
/// Y^eps_t = x e^{a t} * E(sigma (K(t,.) - K(0,.))) evaluated on the path.
/// The K(0,.) subtraction matters only for kernels whose t=0 slice is not
/// identically zero (the clamped mollifier). Independent of the ODE solvers.
PathSolution wick_closed_form_linear(const SdeConfig& cfg, const Kernel& kernel,
                                     const BrownianPath& path, std::size_t subsample = 1);

/// Euler-Maruyama on the path's own grid (strong order 1/2 oracle).
PathSolution euler_maruyama(const SdeConfig& cfg, const BrownianPath& path);

/// Coarsen a fine path by summing groups of `factor` increments; the result
/// is the same Brownian path viewed on the coarser grid.
BrownianPath coarsen_path(const BrownianPath& fine, std::size_t factor);

}  // namespace wzlab
