#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wzlab/time_grid.hpp"

namespace wzlab {

/**
 * @brief Piecewise-constant function on a time grid, one value per cell.
 *
 * The value at index i represents f on the cell (t_i, t_{i+1}]. With this
 * convention the indicator 1_[0,t_k] is exactly representable for any grid
 * node t_k, and the Ito integral of a GridFunction against Brownian
 * increments is exact for the representable class.
 */
class GridFunction {
public:
    GridFunction(TimeGrid grid, std::vector<double> cell_values);

    static GridFunction zero(const TimeGrid& grid);
    static GridFunction constant(const TimeGrid& grid, double value);

    /// Indicator 1_[0,t_k]: value 1 on cells 0..k-1, 0 afterwards.
    static GridFunction indicator(const TimeGrid& grid, std::size_t node_k);

    /// Sample a callable at cell midpoints.
    static GridFunction sample(const TimeGrid& grid, const std::function<double(double)>& f);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const double> cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }
    double operator[](std::size_t i) const noexcept { return cells_[i]; }

    double l2_norm_sq() const;
    double l2_norm() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double scalar);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(GridFunction a, double s) { return a *= s; }
    friend GridFunction operator*(double s, GridFunction a) { return a *= s; }
    friend GridFunction operator-(GridFunction a) { return a *= -1.0; }

private:
    TimeGrid grid_;
    std::vector<double> cells_;
};

/// L2([0,T]) inner product sum_i f_i * g_i * dt. Throws on grid mismatch.
double inner_product(const GridFunction& f, const GridFunction& g);

/// Throws std::invalid_argument when two grid-carrying values disagree.
void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what);

}  // namespace wzlab
