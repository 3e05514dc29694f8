#include "wzlab/sde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace wzlab {

namespace {

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Catmull-Rom sample of a node array at position j + frac (linear fallback at the ends
// is implicit through index clamping).
double cubic_at(const std::vector<double>& nodes, std::size_t j, double frac) {
    if (frac == 0.0) return nodes[j];
    if (frac == 1.0) return nodes[j + 1];
    const std::size_t last = nodes.size() - 1;
    const double p0 = nodes[j > 0 ? j - 1 : 0];
    const double p1 = nodes[j];
    const double p2 = nodes[j + 1];
    const double p3 = nodes[std::min(j + 2, last)];
    const double t = frac;
    return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                          t * (3.0 * (p1 - p2) + p3 - p0)));
}

double lerp_at(const std::vector<double>& nodes, std::size_t j, double frac) {
    return nodes[j] * (1.0 - frac) + nodes[j + 1] * frac;
}

// Classical RK4 over grid cells [0, n_cells); rhs(cell, frac, x) with frac in {0, 1/2, 1}.
// Node values are written through `emit(node_index, value)`.
template <typename Rhs, typename Emit>
void rk4_integrate(const TimeGrid& grid, std::size_t n_cells, double x0, Rhs&& rhs, Emit&& emit) {
    const double dt = grid.dt();
    double x = x0;
    emit(0, x);
    for (std::size_t j = 0; j < n_cells; ++j) {
        const double k1 = rhs(j, 0.0, x);
        const double k2 = rhs(j, 0.5, x + 0.5 * dt * k1);
        const double k3 = rhs(j, 0.5, x + 0.5 * dt * k2);
        const double k4 = rhs(j, 1.0, x + dt * k3);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(x)) {
            throw NumericFailure("ODE state became non-finite", j + 1);
        }
        emit(j + 1, x);
    }
}

std::vector<double> sigma_at_cell_midpoints(const SigmaSpec& sigma, const TimeGrid& grid) {
    std::vector<double> cells(grid.n_steps());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = sigma(grid.cell_midpoint(i));
    return cells;
}

std::vector<std::size_t> subsampled_nodes(std::size_t n, std::size_t stride) {
    if (stride == 0) stride = 1;
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k <= n; k += stride) nodes.push_back(k);
    if (nodes.back() != n) nodes.push_back(n);
    return nodes;
}

// Shared factored integrator: X = Z * exp{psi(t)} with dZ/dt = b(t, Z e^psi) e^{-psi},
// psi given at nodes and linearly interpolated at stage times.
template <typename Drift>
std::vector<double> solve_factored(const TimeGrid& grid, double x0, Drift&& drift,
                                   const std::vector<double>& psi) {
    std::vector<double> out(grid.n_steps() + 1);
    rk4_integrate(
        grid, grid.n_steps(), x0,
        [&](std::size_t j, double frac, double z) {
            const double t = grid.node(j) + frac * grid.dt();
            const double e = std::exp(lerp_at(psi, j, frac));
            return drift(t, z * e) / e;
        },
        [&](std::size_t node, double z) { out[node] = z * std::exp(psi[node]); });
    return out;
}

}  // namespace

DriftSpec::DriftSpec(DriftFamily family, double a, double c, double c1, double c2)
    : family_(family), a_(a), c_(c), c1_(c1), c2_(c2) {}

DriftSpec DriftSpec::zero() { return DriftSpec(DriftFamily::Zero, 0.0, 0.0, 0.0, 0.0); }

DriftSpec DriftSpec::linear(double a) {
    return DriftSpec(DriftFamily::Linear, a, 0.0, std::abs(a), std::abs(a));
}

DriftSpec DriftSpec::affine_sine(double a, double c) {
    return DriftSpec(DriftFamily::AffineSine, a, c, std::abs(a) + std::abs(c),
                     std::abs(a) + std::abs(c));
}

DriftSpec DriftSpec::logistic_clipped(double a, double cap) {
    if (!(cap > 0.0)) throw std::invalid_argument("DriftSpec::logistic_clipped: cap must be positive");
    return DriftSpec(DriftFamily::LogisticClipped, a, cap, std::abs(a), std::abs(a) * cap / 4.0);
}

double DriftSpec::operator()(double /*t*/, double x) const {
    switch (family_) {
        case DriftFamily::Zero:
            return 0.0;
        case DriftFamily::Linear:
            return a_ * x;
        case DriftFamily::AffineSine:
            return a_ * x + c_ * std::sin(x);
        case DriftFamily::LogisticClipped: {
            const double y = clamp(x, 0.0, c_);
            return a_ * y * (1.0 - y / c_);
        }
    }
    return 0.0;
}

SigmaSpec SigmaSpec::constant(double value) {
    SigmaSpec s;
    s.family_ = SigmaFamily::Constant;
    s.value_ = value;
    s.sup_norm_ = std::abs(value);
    return s;
}

SigmaSpec SigmaSpec::piecewise_constant(std::vector<double> values, double horizon) {
    if (values.empty()) {
        throw std::invalid_argument("SigmaSpec::piecewise_constant: needs at least one value");
    }
    SigmaSpec s;
    s.family_ = SigmaFamily::PiecewiseConstant;
    s.values_ = std::move(values);
    s.horizon_ = horizon;
    for (double v : s.values_) s.sup_norm_ = std::max(s.sup_norm_, std::abs(v));
    return s;
}

SigmaSpec SigmaSpec::sine(double base, double amplitude, double frequency) {
    SigmaSpec s;
    s.family_ = SigmaFamily::Sine;
    s.base_ = base;
    s.amplitude_ = amplitude;
    s.frequency_ = frequency;
    s.sup_norm_ = std::abs(base) + std::abs(amplitude);
    return s;
}

double SigmaSpec::operator()(double t) const {
    switch (family_) {
        case SigmaFamily::Constant:
            return value_;
        case SigmaFamily::PiecewiseConstant: {
            const double pos = t / horizon_ * static_cast<double>(values_.size());
            const auto idx = std::min(static_cast<std::size_t>(std::max(pos, 0.0)),
                                      values_.size() - 1);
            return values_[idx];
        }
        case SigmaFamily::Sine:
            return base_ + amplitude_ * std::sin(frequency_ * t);
    }
    return 0.0;
}

double SigmaSpec::constant_value() const {
    if (family_ != SigmaFamily::Constant) {
        throw std::logic_error("SigmaSpec::constant_value: sigma is not constant");
    }
    return value_;
}

PathSolution exact_stratonovich(const SdeConfig& cfg, const BrownianPath& path) {
    if (cfg.interpretation != SdeInterpretation::Stratonovich) {
        throw std::invalid_argument("exact_stratonovich: config must use the Stratonovich interpretation");
    }
    require_same_grid(cfg.grid, path.grid(), "exact_stratonovich");
    const auto sigma_cells = sigma_at_cell_midpoints(cfg.sigma, cfg.grid);

    // psi(t_k) = int_0^{t_k} sigma dB, exact on the piecewise-constant class
    std::vector<double> psi(cfg.grid.n_steps() + 1, 0.0);
    const auto db = path.increments();
    for (std::size_t i = 0; i < db.size(); ++i) psi[i + 1] = psi[i] + sigma_cells[i] * db[i];

    auto values = solve_factored(cfg.grid, cfg.x0,
                                 [&](double t, double x) { return cfg.drift(t, x); }, psi);
    return PathSolution{cfg.grid, 1, subsampled_nodes(cfg.grid.n_steps(), 1), std::move(values),
                        SolutionKind::ExactStratonovich};
}

PathSolution exact_ito(const SdeConfig& cfg, const BrownianPath& path) {
    if (cfg.interpretation != SdeInterpretation::Ito) {
        throw std::invalid_argument("exact_ito: config must use the Ito interpretation");
    }
    require_same_grid(cfg.grid, path.grid(), "exact_ito");
    const auto sigma_cells = sigma_at_cell_midpoints(cfg.sigma, cfg.grid);

    std::vector<double> psi(cfg.grid.n_steps() + 1, 0.0);
    const auto db = path.increments();
    for (std::size_t i = 0; i < db.size(); ++i) psi[i + 1] = psi[i] + sigma_cells[i] * db[i];

    // Stratonovich reformulation with the Ito-to-Stratonovich corrected drift
    auto values = solve_factored(
        cfg.grid, cfg.x0,
        [&](double t, double x) {
            const double s = cfg.sigma(t);
            return cfg.drift(t, x) - 0.5 * s * s * x;
        },
        psi);
    return PathSolution{cfg.grid, 1, subsampled_nodes(cfg.grid.n_steps(), 1), std::move(values),
                        SolutionKind::ExactIto};
}

PathSolution wz_pointwise(const SdeConfig& cfg, const Kernel& kernel, const BrownianPath& path,
                          WzRoute route) {
    if (cfg.interpretation != SdeInterpretation::Stratonovich) {
        throw std::invalid_argument("wz_pointwise: config must use the Stratonovich interpretation");
    }
    require_same_grid(cfg.grid, path.grid(), "wz_pointwise");
    require_same_grid(cfg.grid, kernel.grid(), "wz_pointwise");

    const SmoothedPath sp = smooth_path(kernel, path);
    const auto& v = sp.node_derivs;
    const bool cellwise = kernel.derivative_is_cellwise_constant();
    const double dt = cfg.grid.dt();

    if (route == WzRoute::Direct) {
        std::vector<double> out(cfg.grid.n_steps() + 1);
        rk4_integrate(
            cfg.grid, cfg.grid.n_steps(), cfg.x0,
            [&](std::size_t j, double frac, double x) {
                const double t = cfg.grid.node(j) + frac * dt;
                const double vs = cellwise ? v[j + 1] : cubic_at(v, j, frac);
                return cfg.drift(t, x) + cfg.sigma(t) * x * vs;
            },
            [&](std::size_t node, double x) { out[node] = x; });
        return PathSolution{cfg.grid, 1, subsampled_nodes(cfg.grid.n_steps(), 1), std::move(out),
                            SolutionKind::WzPointwise};
    }

    // psi(t_k) = int_0^{t_k} sigma(s) dB^eps/ds ds. Exact via the kernel table for
    // constant sigma (and, separately, for the cellwise-constant derivative family);
    // trapezoid otherwise.
    std::vector<double> psi(cfg.grid.n_steps() + 1, 0.0);
    if (cfg.sigma.is_constant()) {
        const double c = cfg.sigma.constant_value();
        for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = c * (sp.values[k] - sp.values[0]);
    } else if (cellwise) {
        const auto sigma_cells = sigma_at_cell_midpoints(cfg.sigma, cfg.grid);
        for (std::size_t j = 0; j + 1 < psi.size(); ++j) {
            psi[j + 1] = psi[j] + sigma_cells[j] * v[j + 1] * dt;
        }
    } else {
        for (std::size_t j = 0; j + 1 < psi.size(); ++j) {
            const double t0 = cfg.grid.node(j);
            const double t1 = cfg.grid.node(j + 1);
            psi[j + 1] = psi[j] + 0.5 * dt * (cfg.sigma(t0) * v[j] + cfg.sigma(t1) * v[j + 1]);
        }
    }

    auto values = solve_factored(cfg.grid, cfg.x0,
                                 [&](double t, double x) { return cfg.drift(t, x); }, psi);
    return PathSolution{cfg.grid, 1, subsampled_nodes(cfg.grid.n_steps(), 1), std::move(values),
                        SolutionKind::WzPointwise};
}

WickSolver::WickSolver(const SdeConfig& cfg, const Kernel& kernel, std::size_t subsample)
    : cfg_(cfg), kernel_(kernel), subsample_(subsample == 0 ? 1 : subsample) {
    if (cfg.interpretation != SdeInterpretation::Ito) {
        throw std::invalid_argument("WickSolver: config must use the Ito interpretation");
    }
    require_same_grid(cfg.grid, kernel.grid(), "WickSolver");

    const std::size_t n = cfg.grid.n_steps();
    const double dt = cfg.grid.dt();
    output_nodes_ = subsampled_nodes(n, subsample_);
    sigma_cells_ = sigma_at_cell_midpoints(cfg.sigma, cfg.grid);

    // Path-independent shift inner products <dK(t_j,.), K(t_k,.)>, one column per
    // output node; rows only up to k+1 are ever sampled by the integrator.
    shift_gram_.resize(output_nodes_.size());
    for (std::size_t i = 0; i < output_nodes_.size(); ++i) {
        const std::size_t k = output_nodes_[i];
        const auto target = kernel.slice_cells(k);
        const std::size_t rows = std::min(n, k + 1) + 1;
        auto& column = shift_gram_[i];
        column.assign(rows, 0.0);
        for (std::size_t j = 0; j < rows; ++j) {
            const auto dv = kernel.derivative_cells(j);
            double acc = 0.0;
            for (std::size_t c = 0; c < target.size(); ++c) acc += dv[c] * target[c];
            column[j] = acc * dt;
        }
    }
}

PathSolution WickSolver::solve(const BrownianPath& path) const {
    require_same_grid(cfg_.grid, path.grid(), "WickSolver::solve");
    const std::size_t n = cfg_.grid.n_steps();
    const double dt = cfg_.grid.dt();
    const auto db = path.increments();
    const bool cellwise = kernel_.derivative_is_cellwise_constant();

    // dB^eps/dt at nodes on the unshifted path
    std::vector<double> base_deriv(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const auto dv = kernel_.derivative_cells(j);
        double acc = 0.0;
        for (std::size_t c = 0; c < db.size(); ++c) acc += dv[c] * db[c];
        base_deriv[j] = acc;
    }

    std::vector<double> values(output_nodes_.size());
    std::vector<double> shifted(n + 1);
    for (std::size_t i = 0; i < output_nodes_.size(); ++i) {
        const std::size_t k = output_nodes_[i];
        if (k == 0) {
            values[i] = cfg_.x0;
            continue;
        }
        const double shift_scale = cfg_.sigma(cfg_.grid.node(k));
        const auto& column = shift_gram_[i];
        const std::size_t rows = column.size();
        shifted.assign(n + 1, 0.0);
        for (std::size_t j = 0; j < rows; ++j) shifted[j] = base_deriv[j] - shift_scale * column[j];

        double terminal = cfg_.x0;
        rk4_integrate(
            cfg_.grid, k, cfg_.x0,
            [&](std::size_t j, double frac, double s) {
                const double t = cfg_.grid.node(j) + frac * dt;
                const double sig = cfg_.sigma(t);
                const double vs = cellwise ? shifted[j + 1] : cubic_at(shifted, j, frac);
                const double correction = 0.5 * sig * sig * kernel_.norm_sq_rate_in_cell(j, frac);
                return cfg_.drift(t, s) + correction * s + sig * s * vs;
            },
            [&](std::size_t node, double s) {
                if (node == k) terminal = s;
            });
        values[i] = terminal;
    }
    return PathSolution{cfg_.grid, subsample_, output_nodes_, std::move(values),
                        SolutionKind::WzWick};
}

PathSolution wz_wick(const SdeConfig& cfg, const Kernel& kernel, const BrownianPath& path,
                     std::size_t subsample) {
    return WickSolver(cfg, kernel, subsample).solve(path);
}

double d_l2norm_dt(const Kernel& kernel, std::size_t k) { return kernel.norm_sq_rate(k); }

PathSolution wick_closed_form_linear(const SdeConfig& cfg, const Kernel& kernel,
                                     const BrownianPath& path, std::size_t subsample) {
    if (cfg.drift.family() != DriftFamily::Zero && cfg.drift.family() != DriftFamily::Linear) {
        throw std::invalid_argument("wick_closed_form_linear: drift must be Zero or Linear");
    }
    if (!cfg.sigma.is_constant()) {
        throw std::invalid_argument("wick_closed_form_linear: sigma must be constant");
    }
    require_same_grid(cfg.grid, kernel.grid(), "wick_closed_form_linear");
    require_same_grid(cfg.grid, path.grid(), "wick_closed_form_linear");

    const double a = cfg.drift.family() == DriftFamily::Linear ? cfg.drift.param_a() : 0.0;
    const double c = cfg.sigma.constant_value();
    const std::size_t n = cfg.grid.n_steps();
    const auto nodes = subsampled_nodes(n, subsample == 0 ? 1 : subsample);
    const auto db = path.increments();

    // delta(K(0,.)) and |K(0,.)|^2: zero for the polygonal family, small but
    // nonzero for the clamped mollifier.
    const auto base_row = kernel.slice_cells(0);
    double b_eps_0 = 0.0;
    for (std::size_t i = 0; i < db.size(); ++i) b_eps_0 += base_row[i] * db[i];
    const double base_norm_sq = kernel.norm_sq(0);

    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::size_t k = nodes[i];
        const auto row = kernel.slice_cells(k);
        double b_eps = 0.0;
        for (std::size_t c2 = 0; c2 < db.size(); ++c2) b_eps += row[c2] * db[c2];
        const double cross = kernel.slice_inner(k, 0);
        const double centered_norm_sq = kernel.norm_sq(k) - 2.0 * cross + base_norm_sq;
        const double exponent =
            a * cfg.grid.node(k) + c * (b_eps - b_eps_0) - 0.5 * c * c * centered_norm_sq;
        values[i] = cfg.x0 * std::exp(exponent);
    }
    return PathSolution{cfg.grid, subsample == 0 ? 1 : subsample, nodes, std::move(values),
                        SolutionKind::ClosedForm};
}

PathSolution euler_maruyama(const SdeConfig& cfg, const BrownianPath& path) {
    if (cfg.interpretation != SdeInterpretation::Ito) {
        throw std::invalid_argument("euler_maruyama: config must use the Ito interpretation");
    }
    require_same_grid(cfg.grid, path.grid(), "euler_maruyama");
    const std::size_t n = cfg.grid.n_steps();
    const double dt = cfg.grid.dt();
    const auto db = path.increments();
    std::vector<double> out(n + 1);
    out[0] = cfg.x0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = cfg.grid.node(j);
        out[j + 1] = out[j] + cfg.drift(t, out[j]) * dt + cfg.sigma(t) * out[j] * db[j];
        if (!std::isfinite(out[j + 1])) {
            throw NumericFailure("Euler-Maruyama state became non-finite", j + 1);
        }
    }
    return PathSolution{cfg.grid, 1, subsampled_nodes(n, 1), std::move(out),
                        SolutionKind::FineEuler};
}

BrownianPath coarsen_path(const BrownianPath& fine, std::size_t factor) {
    if (factor == 0 || fine.grid().n_steps() % factor != 0) {
        throw std::invalid_argument("coarsen_path: factor must divide the fine step count");
    }
    const std::size_t n_coarse = fine.grid().n_steps() / factor;
    const TimeGrid coarse(fine.grid().horizon(), n_coarse);
    std::vector<double> increments(n_coarse, 0.0);
    const auto db = fine.increments();
    for (std::size_t j = 0; j < n_coarse; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < factor; ++i) acc += db[j * factor + i];
        increments[j] = acc;
    }
    return BrownianPath(coarse, std::move(increments), fine.seed(), fine.sample_index());
}

}  // namespace wzlab
