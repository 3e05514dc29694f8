#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wzlab/rate.hpp"

namespace wzlab {

namespace {

constexpr std::size_t kBlockSize = 128;

struct BlockMoments {
    std::vector<double> m1;  // sum of |diff|^p per output node
    std::vector<double> m2;  // sum of |diff|^{2p} per output node
};

// Combine block partials in a fixed pairwise tree so the aggregate is
// independent of the worker schedule.
BlockMoments pairwise_combine(std::vector<BlockMoments>& blocks, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(blocks[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    BlockMoments left = pairwise_combine(blocks, lo, mid);
    BlockMoments right = pairwise_combine(blocks, mid, hi);
    for (std::size_t i = 0; i < left.m1.size(); ++i) {
        left.m1[i] += right.m1[i];
        left.m2[i] += right.m2[i];
    }
    return left;
}

std::vector<std::size_t> wick_output_nodes(std::size_t n, std::size_t stride) {
    if (stride == 0) stride = 1;
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k <= n; k += stride) nodes.push_back(k);
    if (nodes.back() != n) nodes.push_back(n);
    return nodes;
}

}  // namespace

ErrorPoint mc_error(SolverPair pair, const SdeConfig& cfg, const Kernel& kernel,
                    const McOptions& opts) {
    if (opts.n_samples < 2) throw std::invalid_argument("mc_error: needs at least 2 samples");
    if (opts.p < 1.0) throw std::invalid_argument("mc_error: p must be at least 1");
    require_same_grid(cfg.grid, kernel.grid(), "mc_error");

    const bool wick = pair == SolverPair::ItoVsWick;
    const WickSolver* wick_solver = nullptr;
    std::unique_ptr<WickSolver> wick_storage;
    std::vector<std::size_t> nodes;
    if (wick) {
        wick_storage = std::make_unique<WickSolver>(cfg, kernel, opts.subsample);
        wick_solver = wick_storage.get();
        nodes = wick_solver->output_nodes();
    } else {
        nodes = wick_output_nodes(cfg.grid.n_steps(), 1);
    }

    const std::size_t n_nodes = nodes.size();
    const std::size_t n_blocks = (opts.n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockMoments> blocks(n_blocks);

    const double p = opts.p;
    const bool p_is_two = p == 2.0;

    auto run_block = [&](std::size_t b) {
        BlockMoments& block = blocks[b];
        block.m1.assign(n_nodes, 0.0);
        block.m2.assign(n_nodes, 0.0);
        const std::size_t lo = b * kBlockSize;
        const std::size_t hi = std::min(opts.n_samples, lo + kBlockSize);
        for (std::size_t s = lo; s < hi; ++s) {
            const BrownianPath path = sample_brownian(cfg.grid, opts.seed, s);
            const auto solve_pair = [&]() -> std::pair<PathSolution, PathSolution> {
                try {
                    PathSolution exact =
                        wick ? exact_ito(cfg, path) : exact_stratonovich(cfg, path);
                    PathSolution approx =
                        wick ? wick_solver->solve(path) : wz_pointwise(cfg, kernel, path);
                    return {std::move(exact), std::move(approx)};
                } catch (const NumericFailure& err) {
                    throw NumericFailure(std::string(err.what()) + " (sample index " +
                                             std::to_string(s) + ")",
                                         err.node());
                }
            };
            const auto [exact, approx] = solve_pair();
            for (std::size_t i = 0; i < n_nodes; ++i) {
                const double e = exact.values[nodes[i]];
                const double a = wick ? approx.values[i] : approx.values[nodes[i]];
                const double d = std::abs(a - e);
                const double dp = p_is_two ? d * d : std::pow(d, p);
                block.m1[i] += dp;
                block.m2[i] += dp * dp;
            }
        }
    };

    std::size_t jobs = opts.jobs != 0 ? opts.jobs : std::thread::hardware_concurrency();
    jobs = std::max<std::size_t>(1, std::min(jobs, n_blocks));
    if (jobs == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        workers.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                try {
                    for (std::size_t b = next.fetch_add(1); b < n_blocks;
                         b = next.fetch_add(1)) {
                        run_block(b);
                    }
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    const BlockMoments total = pairwise_combine(blocks, 0, n_blocks);
    const auto n = static_cast<double>(opts.n_samples);

    std::size_t argmax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        if (total.m1[i] > best) {
            best = total.m1[i];
            argmax = i;
        }
    }
    const double mean1 = total.m1[argmax] / n;
    const double error = std::pow(mean1, 1.0 / p);
    double std_error = 0.0;
    if (mean1 > 0.0) {
        const double var = std::max(0.0, (total.m2[argmax] / n - mean1 * mean1) * n / (n - 1.0));
        const double se_mean = std::sqrt(var / n);
        std_error = std::pow(error, 1.0 - p) / p * se_mean;
    }
    return ErrorPoint{kernel.epsilon(), kernel.delta_distance(), error, std_error, opts.n_samples};
}

double closed_form_node_error(SolverPair pair, const SdeConfig& cfg, const Kernel& kernel,
                              std::size_t k) {
    if (cfg.drift.family() != DriftFamily::Zero && cfg.drift.family() != DriftFamily::Linear) {
        throw std::invalid_argument("closed_form_node_error: drift must be Zero or Linear");
    }
    if (!cfg.sigma.is_constant()) {
        throw std::invalid_argument("closed_form_node_error: sigma must be constant");
    }
    require_same_grid(cfg.grid, kernel.grid(), "closed_form_node_error");

    const double a = cfg.drift.family() == DriftFamily::Linear ? cfg.drift.param_a() : 0.0;
    const double c = cfg.sigma.constant_value();
    const double t = cfg.grid.node(k);
    const double dt = cfg.grid.dt();
    const double c2 = c * c;

    // Centered kernel slice Khat = K(t_k,.) - K(0,.); the t=0 slice vanishes for
    // the polygonal family.
    const auto base = kernel.slice_cells(0);
    const double cross = kernel.slice_inner(k, 0);
    const double khat_sq = kernel.norm_sq(k) - 2.0 * cross + kernel.norm_sq(0);
    double base_ind = 0.0;  // <K(0,.), 1_[0,t_k]>
    for (std::size_t j = 0; j < k; ++j) base_ind += base[j];
    base_ind *= dt;
    const double khat_ind = kernel.inner_with_indicator(k) - base_ind;

    const double scale = std::abs(cfg.x0) * std::exp(a * t);
    double diff_sq = 0.0;
    if (pair == SolverPair::StratonovichVsWz) {
        // || e^{delta(c Khat)} - e^{delta(c 1)} ||_2 via Gaussian moment
        // generating functions
        const double sum_sq = c2 * (khat_sq + 2.0 * khat_ind + t);
        diff_sq = std::exp(2.0 * c2 * khat_sq) + std::exp(2.0 * c2 * t) -
                  2.0 * std::exp(0.5 * sum_sq);
    } else {
        // || E(c Khat) - E(c 1) ||_2
        diff_sq = std::exp(c2 * khat_sq) + std::exp(c2 * t) - 2.0 * std::exp(c2 * khat_ind);
    }
    return scale * std::sqrt(std::max(diff_sq, 0.0));
}

ErrorPoint closed_form_error(SolverPair pair, const SdeConfig& cfg, const Kernel& kernel,
                             std::size_t subsample) {
    const auto nodes = wick_output_nodes(cfg.grid.n_steps(), subsample);
    double worst = 0.0;
    for (std::size_t k : nodes) {
        worst = std::max(worst, closed_form_node_error(pair, cfg, kernel, k));
    }
    return ErrorPoint{kernel.epsilon(), kernel.delta_distance(), worst, 0.0, 0};
}

}  // namespace wzlab
