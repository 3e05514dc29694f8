#include "wzlab/brownian.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace wzlab {

namespace detail {
namespace {

// Philox4x32-10: counter-based block cipher (Salmon et al., SC'11 constants).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

inline std::array<std::uint32_t, 4> philox_block(std::uint64_t key, std::uint64_t ctr_hi,
                                                 std::uint64_t ctr_lo) {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
        static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return ctr;
}

// Uniform in (0, 1): 53 mantissa bits plus a half-ulp offset keeps log() finite.
inline double to_open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double gaussian_draw(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t counter) {
    const auto block = philox_block(seed, sample_index, counter);
    const std::uint64_t a = (static_cast<std::uint64_t>(block[0]) << 32) | block[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(block[2]) << 32) | block[3];
    const double u1 = to_open_unit(a);
    const double u2 = to_open_unit(b);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

BrownianPath::BrownianPath(TimeGrid grid, std::vector<double> increments, std::uint64_t seed,
                           std::uint64_t sample_index)
    : grid_(grid), increments_(std::move(increments)), seed_(seed), sample_index_(sample_index) {
    if (increments_.size() != grid_.n_steps()) {
        throw std::invalid_argument("BrownianPath: increment count must equal n_steps");
    }
    nodes_.resize(grid_.n_steps() + 1);
    nodes_[0] = 0.0;
    for (std::size_t i = 0; i < increments_.size(); ++i) nodes_[i + 1] = nodes_[i] + increments_[i];
}

BrownianPath sample_brownian(const TimeGrid& grid, std::uint64_t seed, std::uint64_t sample_index) {
    const double sqrt_dt = std::sqrt(grid.dt());
    std::vector<double> increments(grid.n_steps());
    for (std::size_t i = 0; i < increments.size(); ++i) {
        increments[i] = sqrt_dt * detail::gaussian_draw(seed, sample_index, i);
    }
    return BrownianPath(grid, std::move(increments), seed, sample_index);
}

double ito_integral(const GridFunction& f, const BrownianPath& path) {
    require_same_grid(f.grid(), path.grid(), "ito_integral");
    const auto fc = f.cells();
    const auto db = path.increments();
    double acc = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) acc += fc[i] * db[i];
    return acc;
}

BrownianPath shift_path(const BrownianPath& path, const GridFunction& g) {
    require_same_grid(path.grid(), g.grid(), "shift_path");
    const double dt = path.grid().dt();
    std::vector<double> increments(path.increments().begin(), path.increments().end());
    const auto gc = g.cells();
    for (std::size_t i = 0; i < increments.size(); ++i) increments[i] += gc[i] * dt;
    return BrownianPath(path.grid(), std::move(increments), path.seed(), path.sample_index());
}

}  // namespace wzlab
