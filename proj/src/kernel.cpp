#include "wzlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace wzlab {

namespace {

// Standard bump exp(-1/(1-w^2)) on (-1,1), normalized to unit mass by a fixed
// fine midpoint quadrature. The cumulative table gives both rho and its CDF.
constexpr std::size_t kBumpTableCells = 1u << 16;

struct BumpTable {
    std::vector<double> cdf;  // at w_j = -1 + j*h, j = 0..M
    double mass_raw;
    double h;

    BumpTable() : cdf(kBumpTableCells + 1, 0.0), h(2.0 / kBumpTableCells) {
        for (std::size_t j = 0; j < kBumpTableCells; ++j) {
            const double w = -1.0 + (static_cast<double>(j) + 0.5) * h;
            cdf[j + 1] = cdf[j] + raw(w) * h;
        }
        mass_raw = cdf[kBumpTableCells];
    }

    static double raw(double w) {
        const double one_minus = 1.0 - w * w;
        return one_minus > 0.0 ? std::exp(-1.0 / one_minus) : 0.0;
    }

    double density(double w) const { return raw(w) / mass_raw; }

    double cumulative(double w) const {
        if (w <= -1.0) return 0.0;
        if (w >= 1.0) return 1.0;
        const double pos = (w + 1.0) / h;
        const std::size_t j = std::min(static_cast<std::size_t>(pos), kBumpTableCells - 1);
        const double frac = pos - static_cast<double>(j);
        return (cdf[j] * (1.0 - frac) + cdf[j + 1] * frac) / mass_raw;
    }
};

const BumpTable& bump_table() {
    static const BumpTable table;
    return table;
}

// Catmull-Rom interpolation of node samples at position j + frac.
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

}  // namespace

std::string to_string(KernelFamily family) {
    return family == KernelFamily::Polygonal ? "polygonal" : "mollifier";
}

Kernel::Kernel(KernelFamily family, double epsilon, TimeGrid grid)
    : family_(family), epsilon_(epsilon), grid_(grid), n_cells_(grid.n_steps()) {
    const std::size_t rows = n_rows();
    values_.assign(rows * n_cells_, 0.0);
    derivs_.assign(rows * n_cells_, 0.0);
}

Kernel Kernel::polygonal(const TimeGrid& grid, double mesh) {
    const double dt = grid.dt();
    const double ratio = mesh / dt;
    const auto m = static_cast<std::size_t>(std::llround(ratio));
    if (m == 0 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio + 1e-12) {
        throw std::invalid_argument("Kernel::polygonal: mesh must be an integer multiple of dt");
    }
    if (grid.n_steps() % m != 0) {
        throw std::invalid_argument("Kernel::polygonal: mesh must divide the horizon");
    }

    Kernel k(KernelFamily::Polygonal, mesh, grid);
    const std::size_t n = k.n_cells_;
    for (std::size_t row = 0; row <= n; ++row) {
        double* kv = k.values_.data() + row * n;
        double* dv = k.derivs_.data() + row * n;
        const std::size_t part = row / m;           // partition cell of t_row
        const std::size_t r = row % m;              // grid cells into it
        const double theta = static_cast<double>(r) / static_cast<double>(m);
        for (std::size_t c = 0; c < part * m && c < n; ++c) kv[c] = 1.0;
        if (r != 0) {
            for (std::size_t c = part * m; c < (part + 1) * m; ++c) kv[c] = theta;
        }
        // left-limit derivative: the partition cell containing (t_{row-1}, t_row]
        const std::size_t dpart = row == 0 ? 0 : (row - 1) / m;
        const double slope = 1.0 / mesh;
        for (std::size_t c = dpart * m; c < std::min((dpart + 1) * m, n); ++c) dv[c] = slope;
    }
    k.finalize_tables();
    return k;
}

Kernel Kernel::mollifier(const TimeGrid& grid, double epsilon) {
    if (!(epsilon > 0.0) || epsilon < 2.0 * grid.dt()) {
        throw std::invalid_argument(
            "Kernel::mollifier: epsilon must be at least 2*dt (under-resolved otherwise)");
    }
    Kernel k(KernelFamily::Mollifier, epsilon, grid);
    const BumpTable& bump = bump_table();
    const std::size_t n = k.n_cells_;
    const double horizon = grid.horizon();
    for (std::size_t row = 0; row <= n; ++row) {
        double* kv = k.values_.data() + row * n;
        double* dv = k.derivs_.data() + row * n;
        const double t = grid.node(row);
        // truncation term from clamping the support to [0, T]
        const double tail_arg = (t - horizon) / epsilon;
        const double cdf_tail = bump.cumulative(tail_arg);
        const double rho_tail = bump.density(tail_arg) / epsilon;
        for (std::size_t c = 0; c < n; ++c) {
            const double w = (t - grid.cell_midpoint(c)) / epsilon;
            kv[c] = bump.cumulative(w) - cdf_tail;
            dv[c] = bump.density(w) / epsilon - rho_tail;
        }
    }
    k.finalize_tables();
    return k;
}

void Kernel::finalize_tables() {
    const std::size_t rows = n_rows();
    const double dt = grid_.dt();
    norm_sq_.assign(rows, 0.0);
    inner_ind_.assign(rows, 0.0);
    node_dist_.assign(rows, 0.0);
    norm_sq_rate_.assign(rows, 0.0);
    for (std::size_t row = 0; row < rows; ++row) {
        const double* kv = values_.data() + row * n_cells_;
        const double* dv = derivs_.data() + row * n_cells_;
        double nsq = 0.0, dist_sq = 0.0, inner = 0.0, rate = 0.0;
        for (std::size_t c = 0; c < n_cells_; ++c) {
            nsq += kv[c] * kv[c];
            rate += kv[c] * dv[c];
            const double ind = c < row ? 1.0 : 0.0;
            inner += kv[c] * ind;
            const double diff = kv[c] - ind;
            dist_sq += diff * diff;
        }
        norm_sq_[row] = nsq * dt;
        inner_ind_[row] = inner * dt;
        node_dist_[row] = std::sqrt(dist_sq * dt);
        norm_sq_rate_[row] = 2.0 * rate * dt;
    }
}

std::span<const double> Kernel::slice_cells(std::size_t k) const {
    return {values_.data() + k * n_cells_, n_cells_};
}

std::span<const double> Kernel::derivative_cells(std::size_t k) const {
    return {derivs_.data() + k * n_cells_, n_cells_};
}

GridFunction Kernel::slice(std::size_t k) const {
    const auto row = slice_cells(k);
    return GridFunction(grid_, std::vector<double>(row.begin(), row.end()));
}

GridFunction Kernel::derivative_slice(std::size_t k) const {
    const auto row = derivative_cells(k);
    return GridFunction(grid_, std::vector<double>(row.begin(), row.end()));
}

double Kernel::slice_inner(std::size_t k, std::size_t j) const {
    const double* a = values_.data() + k * n_cells_;
    const double* b = values_.data() + j * n_cells_;
    double acc = 0.0;
    for (std::size_t c = 0; c < n_cells_; ++c) acc += a[c] * b[c];
    return acc * grid_.dt();
}

double Kernel::norm_sq_rate_in_cell(std::size_t cell, double frac) const {
    if (family_ == KernelFamily::Polygonal) {
        const auto m = static_cast<std::size_t>(std::llround(epsilon_ / grid_.dt()));
        const std::size_t part = cell / m;
        const double t = grid_.node(cell) + frac * grid_.dt();
        const double theta = (t - grid_.node(part * m)) / epsilon_;
        return 2.0 * theta;
    }
    return cubic_at(norm_sq_rate_, cell, frac);
}

double Kernel::delta_distance() const {
    if (family_ == KernelFamily::Polygonal) {
        // sup attained mid-cell: |K(t,.) - 1_[0,t]|^2 = mesh * theta(1-theta)
        return std::sqrt(epsilon_) / 2.0;
    }
    return *std::max_element(node_dist_.begin(), node_dist_.end());
}

double Kernel::sup_slice_norm() const {
    double m = 0.0;
    for (double nsq : norm_sq_) m = std::max(m, nsq);
    return std::sqrt(m);
}

SmoothedPath smooth_path(const Kernel& kernel, const BrownianPath& path) {
    require_same_grid(kernel.grid(), path.grid(), "smooth_path");
    const std::size_t rows = kernel.n_rows();
    const auto db = path.increments();
    SmoothedPath sp{kernel.grid(), std::vector<double>(rows), std::vector<double>(rows)};
    for (std::size_t row = 0; row < rows; ++row) {
        const auto kv = kernel.slice_cells(row);
        const auto dv = kernel.derivative_cells(row);
        double v = 0.0, d = 0.0;
        for (std::size_t c = 0; c < db.size(); ++c) {
            v += kv[c] * db[c];
            d += dv[c] * db[c];
        }
        sp.values[row] = v;
        sp.node_derivs[row] = d;
    }
    return sp;
}

double delta_distance(const Kernel& kernel) { return kernel.delta_distance(); }

}  // namespace wzlab
