// Deterministic parallel Monte Carlo. Trials are grouped into fixed-size
// blocks; workers claim blocks through an atomic counter, so which thread
// runs which block is scheduling-dependent, but every per-trial quantity is
// a pure function of the trial index (callers seed a counter-based RNG from
// it). Early stopping picks the smallest block *prefix* whose accumulated
// counts satisfy the stop rule and reports exactly that prefix, which makes
// the outcome byte-identical for any worker count.
#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

namespace dppolar {

inline constexpr std::uint64_t kMcBlockSize = 256;

struct McResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials); }
};

namespace detail {

struct McStopRule {
    std::uint64_t min_errors = 0;  // 0 disables early stopping
    std::uint64_t min_trials = 0;

    bool satisfied(std::uint64_t trials, std::uint64_t errors) const {
        return min_errors > 0 && errors >= min_errors && trials >= min_trials;
    }
};

}  // namespace detail

// Runs is_error(trial) for trial = 0..total_trials-1 (or until the stop rule
// fires) and counts failures. is_error must be safe to call concurrently and
// must depend only on the trial index.
template <class IsError>
McResult monte_carlo_fer(std::uint64_t total_trials, std::uint64_t min_errors, std::uint64_t min_trials,
                         unsigned workers, IsError&& is_error) {
    const detail::McStopRule rule{min_errors, min_trials};
    const std::uint64_t num_blocks = (total_trials + kMcBlockSize - 1) / kMcBlockSize;
    McResult result;
    if (num_blocks == 0) return result;

    auto run_block = [&](std::uint64_t b) -> std::uint64_t {
        const std::uint64_t lo = b * kMcBlockSize;
        const std::uint64_t hi = std::min(total_trials, lo + kMcBlockSize);
        std::uint64_t errs = 0;
        for (std::uint64_t t = lo; t < hi; ++t)
            if (is_error(t)) ++errs;
        return errs;
    };

    if (workers <= 1) {
        for (std::uint64_t b = 0; b < num_blocks; ++b) {
            const std::uint64_t lo = b * kMcBlockSize;
            const std::uint64_t hi = std::min(total_trials, lo + kMcBlockSize);
            result.errors += run_block(b);
            result.trials = hi;
            if (rule.satisfied(result.trials, result.errors)) return result;
        }
        return result;
    }

    std::vector<std::uint64_t> block_errors(num_blocks, 0);
    std::vector<char> block_done(num_blocks, 0);
    std::atomic<std::uint64_t> next_block{0};
    std::atomic<bool> stop{false};
    std::mutex frontier_mutex;
    std::uint64_t frontier = 0;  // blocks [0, frontier) are done and accumulated
    std::uint64_t cum_errors = 0;
    bool stopped_early = false;

    auto worker_fn = [&]() {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= num_blocks) return;
            const std::uint64_t errs = run_block(b);
            std::lock_guard<std::mutex> lock(frontier_mutex);
            block_errors[b] = errs;
            block_done[b] = 1;
            // Advance the frontier in strict block order; only counts from the
            // contiguous done-prefix can trigger (and define) the early stop.
            while (frontier < num_blocks && block_done[frontier]) {
                cum_errors += block_errors[frontier];
                ++frontier;
                const std::uint64_t cum_trials = std::min(total_trials, frontier * kMcBlockSize);
                if (!stopped_early && rule.satisfied(cum_trials, cum_errors)) {
                    stopped_early = true;
                    result.trials = cum_trials;
                    result.errors = cum_errors;
                    stop.store(true, std::memory_order_relaxed);
                    break;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();

    if (!stopped_early) {
        result.trials = total_trials;
        result.errors = cum_errors;
    }
    return result;
}

// Accumulates integer count vectors over all trials (no early stop). add must
// be safe to call concurrently; each call may touch only its own accumulator.
// Integer addition is associative, so the merged result is order-independent.
template <class Add>
std::vector<std::uint64_t> monte_carlo_counts(std::uint64_t total_trials, unsigned workers, std::size_t dim,
                                              Add&& add) {
    std::vector<std::uint64_t> total(dim, 0);
    const std::uint64_t num_blocks = (total_trials + kMcBlockSize - 1) / kMcBlockSize;
    if (num_blocks == 0) return total;

    if (workers <= 1) {
        for (std::uint64_t t = 0; t < total_trials; ++t) add(t, total);
        return total;
    }

    std::atomic<std::uint64_t> next_block{0};
    std::mutex merge_mutex;
    auto worker_fn = [&]() {
        std::vector<std::uint64_t> local(dim, 0);
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= num_blocks) break;
            const std::uint64_t lo = b * kMcBlockSize;
            const std::uint64_t hi = std::min(total_trials, lo + kMcBlockSize);
            for (std::uint64_t t = lo; t < hi; ++t) add(t, local);
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (std::size_t i = 0; i < dim; ++i) total[i] += local[i];
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
    return total;
}

inline unsigned default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace dppolar
