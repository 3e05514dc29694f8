#include "wzlab/grid_function.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wzlab {

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": operands live on different grids");
    }
}

GridFunction::GridFunction(TimeGrid grid, std::vector<double> cell_values)
    : grid_(grid), cells_(std::move(cell_values)) {
    if (cells_.size() != grid_.n_steps()) {
        throw std::invalid_argument("GridFunction: cell count must equal n_steps");
    }
}

GridFunction GridFunction::zero(const TimeGrid& grid) {
    return GridFunction(grid, std::vector<double>(grid.n_steps(), 0.0));
}

GridFunction GridFunction::constant(const TimeGrid& grid, double value) {
    return GridFunction(grid, std::vector<double>(grid.n_steps(), value));
}

GridFunction GridFunction::indicator(const TimeGrid& grid, std::size_t node_k) {
    if (node_k > grid.n_steps()) {
        throw std::invalid_argument("GridFunction::indicator: node index out of range");
    }
    std::vector<double> cells(grid.n_steps(), 0.0);
    for (std::size_t i = 0; i < node_k; ++i) cells[i] = 1.0;
    return GridFunction(grid, std::move(cells));
}

GridFunction GridFunction::sample(const TimeGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> cells(grid.n_steps());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = f(grid.cell_midpoint(i));
    return GridFunction(grid, std::move(cells));
}

double GridFunction::l2_norm_sq() const {
    double acc = 0.0;
    for (double v : cells_) acc += v * v;
    return acc * grid_.dt();
}

double GridFunction::l2_norm() const { return std::sqrt(l2_norm_sq()); }

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "GridFunction::operator+=");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "GridFunction::operator-=");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] -= other.cells_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double scalar) {
    for (double& v : cells_) v *= scalar;
    return *this;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f.grid(), g.grid(), "inner_product");
    double acc = 0.0;
    const auto fc = f.cells();
    const auto gc = g.cells();
    for (std::size_t i = 0; i < fc.size(); ++i) acc += fc[i] * gc[i];
    return acc * f.grid().dt();
}

}  // namespace wzlab
