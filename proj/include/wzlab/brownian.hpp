#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wzlab/grid_function.hpp"
#include "wzlab/time_grid.hpp"

namespace wzlab {

/**
 * @brief One realization of a Brownian path on a uniform grid.
 *
 * Increments are N(0, dt) draws from a counter-based generator keyed by
 * (seed, sample_index, increment index); identical keys reproduce
 * bit-identical paths regardless of sampling order. Node values B_{t_k}
 * are the prefix sums of the increments, cached at construction.
 */
class BrownianPath {
public:
    BrownianPath(TimeGrid grid, std::vector<double> increments,
                 std::uint64_t seed = 0, std::uint64_t sample_index = 0);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const double> increments() const noexcept { return increments_; }
    /// B at grid nodes, size n_steps + 1, starting at 0.
    std::span<const double> node_values() const noexcept { return nodes_; }
    double value_at_node(std::size_t k) const noexcept { return nodes_[k]; }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t sample_index() const noexcept { return sample_index_; }

private:
    TimeGrid grid_;
    std::vector<double> increments_;
    std::vector<double> nodes_;
    std::uint64_t seed_;
    std::uint64_t sample_index_;
};

/// Draw the path with the given key. Pure function of its arguments.
BrownianPath sample_brownian(const TimeGrid& grid, std::uint64_t seed, std::uint64_t sample_index);

/// Ito integral of a deterministic piecewise-constant integrand:
/// sum_i f_i * dB_i (exact for the representable class).
double ito_integral(const GridFunction& f, const BrownianPath& path);

/// Cameron-Martin shift of the path: increments become dB_i + g_i * dt.
BrownianPath shift_path(const BrownianPath& path, const GridFunction& g);

namespace detail {

/// One standard normal draw for the key (seed, sample_index, counter).
/// Philox4x32-10 block cipher output fed through Box-Muller (cosine branch);
/// see README for the exact construction.
double gaussian_draw(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t counter);

}  // namespace detail

}  // namespace wzlab
