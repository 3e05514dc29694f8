#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wzlab/brownian.hpp"
#include "wzlab/grid_function.hpp"
#include "wzlab/time_grid.hpp"

namespace wzlab {

enum class KernelFamily { Polygonal, Mollifier };

std::string to_string(KernelFamily family);

/**
 * @brief A smoothing-kernel family member K_eps together with its time
 * derivative, tabulated on the grid.
 *
 * Row k of the value table holds K_eps(t_k, .) as cell values; row k of the
 * derivative table holds d/dt K_eps(t_k, .). At grid nodes the time
 * derivative uses the left-limit convention (the polygonal derivative is
 * piecewise constant between partition nodes).
 *
 * Families:
 *  - Polygonal: piecewise-linear interpolation of the path on a partition
 *    of mesh eps (eps must be an integer multiple of the grid step).
 *    K(t,s) = 1_[0,t_i](s) + theta * 1_(t_i,t_{i+1}](s) with theta the
 *    in-cell fraction of t.
 *  - Mollifier: K(t,s) = integral over u >= s of rho_eps(t-u), where rho is
 *    the standard bump exp(-1/(1-w^2)) on (-1,1), scaled to eps and
 *    normalized to unit mass by quadrature. The support intersection is
 *    clamped to [0,T] without renormalization, so the t=0 slice is small in
 *    L2 but not identically zero; oracles that need the t=0 slice must
 *    subtract it (see the solvers module).
 */
class Kernel {
public:
    static Kernel polygonal(const TimeGrid& grid, double mesh);
    static Kernel mollifier(const TimeGrid& grid, double epsilon);

    KernelFamily family() const noexcept { return family_; }
    double epsilon() const noexcept { return epsilon_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t n_rows() const noexcept { return grid_.n_steps() + 1; }

    /// K(t_k, .) as cell values (zero-copy row view).
    std::span<const double> slice_cells(std::size_t k) const;
    /// d/dt K(t_k, .) as cell values (left limit at nodes).
    std::span<const double> derivative_cells(std::size_t k) const;

    GridFunction slice(std::size_t k) const;
    GridFunction derivative_slice(std::size_t k) const;

    /// |K(t_k, .)|^2 in L2.
    double norm_sq(std::size_t k) const { return norm_sq_[k]; }
    /// <K(t_k, .), 1_[0,t_k]>.
    double inner_with_indicator(std::size_t k) const { return inner_ind_[k]; }
    /// |K(t_k, .) - 1_[0,t_k]| evaluated from the tables.
    double node_indicator_distance(std::size_t k) const { return node_dist_[k]; }
    /// <K(t_k, .), K(t_j, .)>.
    double slice_inner(std::size_t k, std::size_t j) const;

    /// d/dt |K(t, .)|^2 at node t_k = 2 <K(t_k,.), dK/dt(t_k,.)>, left limit.
    double norm_sq_rate(std::size_t k) const { return norm_sq_rate_[k]; }
    /// d/dt |K(t, .)|^2 at t = t_cell + frac * dt, using the in-cell
    /// convention (closed form for the polygonal family, interpolation of
    /// node values for smooth families).
    double norm_sq_rate_in_cell(std::size_t cell, double frac) const;

    /// True when d/dt K(t, .) is constant in t on each grid cell (polygonal).
    bool derivative_is_cellwise_constant() const noexcept {
        return family_ == KernelFamily::Polygonal;
    }

    /// sup over t of |K_eps(t,.) - 1_[0,t]|. Closed form sqrt(mesh)/2 for the
    /// polygonal family (the sup is attained mid-cell); max over grid nodes
    /// otherwise.
    double delta_distance() const;

    /// max over grid nodes of |K(t_k, .)| (houses the uniform bound M).
    double sup_slice_norm() const;

private:
    Kernel(KernelFamily family, double epsilon, TimeGrid grid);
    void finalize_tables();

    KernelFamily family_;
    double epsilon_;
    TimeGrid grid_;
    std::size_t n_cells_;
    std::vector<double> values_;  // (n+1) x n row-major
    std::vector<double> derivs_;  // (n+1) x n row-major
    std::vector<double> norm_sq_;
    std::vector<double> inner_ind_;
    std::vector<double> node_dist_;
    std::vector<double> norm_sq_rate_;
};

/**
 * @brief Smoothed noise B^eps and its time derivative on one path.
 *
 * values[k]      = ito_integral(K(t_k, .), path)
 * node_derivs[k] = ito_integral(dK/dt(t_k, .), path)   (left limit at nodes)
 */
struct SmoothedPath {
    TimeGrid grid;
    std::vector<double> values;
    std::vector<double> node_derivs;
};

SmoothedPath smooth_path(const Kernel& kernel, const BrownianPath& path);

/// Free-function spelling of Kernel::delta_distance.
double delta_distance(const Kernel& kernel);

}  // namespace wzlab
