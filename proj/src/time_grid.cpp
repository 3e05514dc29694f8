#include "wzlab/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace wzlab {

TimeGrid::TimeGrid(double horizon, std::size_t n_steps)
    : horizon_(horizon), n_steps_(n_steps), dt_(horizon / static_cast<double>(n_steps)) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("TimeGrid: horizon must be a positive finite real");
    }
    if (n_steps == 0) {
        throw std::invalid_argument("TimeGrid: n_steps must be at least 1");
    }
}

TimeGrid make_grid(double horizon, std::size_t n_steps) { return TimeGrid(horizon, n_steps); }

}  // namespace wzlab
