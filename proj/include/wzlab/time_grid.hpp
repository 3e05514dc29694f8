#pragma once

#include <cstddef>

namespace wzlab {

/**
 * @brief Uniform time grid on [0, T].
 *
 * Nodes are t_i = i * dt with dt = T / n_steps. All public interfaces in the
 * library are grid-aligned; there is no off-grid evaluation.
 */
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t n_steps);

    double horizon() const noexcept { return horizon_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    double dt() const noexcept { return dt_; }

    /// Node t_i for i in [0, n_steps].
    double node(std::size_t i) const noexcept { return static_cast<double>(i) * dt_; }

    /// Midpoint of cell i, i.e. (t_i + t_{i+1}) / 2.
    double cell_midpoint(std::size_t i) const noexcept {
        return (static_cast<double>(i) + 0.5) * dt_;
    }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) noexcept {
        return a.horizon_ == b.horizon_ && a.n_steps_ == b.n_steps_;
    }
    friend bool operator!=(const TimeGrid& a, const TimeGrid& b) noexcept { return !(a == b); }

private:
    double horizon_;
    std::size_t n_steps_;
    double dt_;
};

/// Factory matching the library's construction conventions; throws
/// std::invalid_argument for T <= 0 or n_steps == 0.
TimeGrid make_grid(double horizon, std::size_t n_steps);

}  // namespace wzlab
