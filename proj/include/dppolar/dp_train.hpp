// Dynamic-programming training of the minus array. Entries are filled in
// ascending (n, k) order; each entry is chosen by simulating the list decoder
// on every candidate split and keeping the first strict minimizer of the
// frame error rate. Candidate runs at one (n, k) share random streams
// (common random numbers), so candidates are compared on identical noise.
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "construct.hpp"
#include "core.hpp"
#include "decode.hpp"
#include "mc.hpp"
#include "minus_array.hpp"
#include "rng.hpp"

namespace dppolar {

struct TrainingConfig {
    int list_size = 32;
    std::size_t trials = 100000;
    double ebn0_db = 2.0;
    int window_lo = -2;  // candidate window around the previous entry ...
    int window_hi = 4;   // ... used once n exceeds full_range_max_n
    std::size_t full_range_max_n = 16;
    std::uint64_t min_errors_stop = 0;  // 0: always run all trials
    std::uint64_t min_trials_stop = 1000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
};

// Emitted once per array entry; fers/fer_trials are empty when the entry was
// forced (single admissible candidate) and no simulation ran.
struct TrainingStep {
    std::size_t n = 0, k = 0;
    std::vector<int> candidates;
    std::vector<double> fers;
    std::vector<std::uint64_t> fer_trials;
    int chosen = 0;
};

using TrainingObserver = std::function<void(const TrainingStep&)>;

namespace detail {

inline constexpr std::uint64_t kTrainSalt = 0x6470;  // stream-domain tag

inline void validate_training_config(const TrainingConfig& cfg) {
    if (cfg.list_size < 1) throw std::invalid_argument("list_size must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    // The previous entry sits at most one below the next row's floor, so any
    // window covering [0, 1] around it intersects every feasible range.
    if (cfg.window_lo > 0 || cfg.window_hi < 1)
        throw std::invalid_argument("candidate window must cover [prev, prev + 1]");
}

}  // namespace detail

// Frame error rate of the list decoder on the (n, k) code built from arr
// (which must already hold the (n, k) entry and all smaller sizes). The
// random stream of a trial depends only on (n, k, trial), never on the
// array contents.
inline McResult training_error_rate(const MinusArray& arr, std::size_t n, std::size_t k,
                                    const TrainingConfig& cfg) {
    if (k == 0) return McResult{cfg.trials, 0};  // no information bits, nothing to get wrong
    const CodeSpec spec(n, minus_construct(n, k, arr));
    const AwgnChannel channel(cfg.ebn0_db, static_cast<double>(k) / static_cast<double>(n));
    const std::uint64_t salt = mix_stream(detail::kTrainSalt,
                                          (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(k));
    return monte_carlo_fer(cfg.trials, cfg.min_errors_stop, cfg.min_trials_stop, cfg.workers,
                           [&](std::uint64_t trial) {
                               RngStream rng(cfg.master_seed, mix_stream(salt, trial));
                               BitVector msg(spec.k);
                               for (auto& b : msg) b = rng.next_bit();
                               const BitVector x = encode(msg, spec);
                               const LlrVector llr =
                                   llr_from_awgn(transmit(modulate_bpsk(x), channel, rng), channel);
                               const DecodeResult r =
                                   scl_decode(llr, spec, static_cast<std::size_t>(cfg.list_size));
                               return r.message != msg;
                           });
}

// Admissible candidate values for entry (n, k), ascending. Small sizes scan
// the whole feasible range; large sizes scan a window around the previous
// entry of the same row, clamped to the feasible range.
inline std::vector<int> training_candidates(const MinusArray& arr, std::size_t n, std::size_t k,
                                            const TrainingConfig& cfg) {
    long lo = minus_range_lo(n, k);
    long hi = minus_range_hi(n, k);
    if (n > cfg.full_range_max_n && k > 0) {
        const long prev = arr.minus(n, k - 1);
        lo = std::max(lo, prev + cfg.window_lo);
        hi = std::min(hi, prev + cfg.window_hi);
    }
    if (lo > hi)
        throw std::logic_error("empty candidate window at (n=" + std::to_string(n) +
                               ", k=" + std::to_string(k) + ")");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    return out;
}

// Fill the minus array for sizes 2..max_n. With a checkpoint path the array
// is re-saved after every entry together with a cursor (seed, trials, noise
// level); an interrupted run resumes where it stopped after the cursor is
// checked against the current configuration.
inline MinusArray calculate_minus_array(std::size_t max_n, const TrainingConfig& cfg,
                                        const TrainingObserver& observer = {},
                                        const std::string& checkpoint_path = {}) {
    if (!is_power_of_two(max_n) || max_n < 2) throw std::invalid_argument("max_n must be a power of two >= 2");
    detail::validate_training_config(cfg);

    MinusArray arr;
    arr.list_size = cfg.list_size;
    if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path)) {
        auto parsed = load_checkpoint(checkpoint_path);
        if (parsed.arr.list_size != cfg.list_size)
            throw MinusArrayError("checkpoint list size does not match configuration");
        if (parsed.cursor) {
            if (parsed.cursor->seed != cfg.master_seed || parsed.cursor->trials != cfg.trials ||
                parsed.cursor->ebn0_db != cfg.ebn0_db)
                throw MinusArrayError("checkpoint was trained under a different configuration");
        } else {
            validate_minus_array(parsed.arr);  // finished artifact, must be self-consistent
        }
        arr = std::move(parsed.arr);
    }

    for (std::size_t n = 2; n <= max_n; n <<= 1) {
        for (std::size_t k = 0; k <= n; ++k) {
            if (arr.has(n, k)) continue;
            TrainingStep step;
            step.n = n;
            step.k = k;
            step.candidates = training_candidates(arr, n, k, cfg);
            if (step.candidates.size() == 1) {
                step.chosen = step.candidates.front();
            } else {
                double best_fer = 0.0;
                for (std::size_t c = 0; c < step.candidates.size(); ++c) {
                    arr.set(n, k, step.candidates[c]);
                    const McResult r = training_error_rate(arr, n, k, cfg);
                    step.fers.push_back(r.rate());
                    step.fer_trials.push_back(r.trials);
                    if (c == 0 || r.rate() < best_fer) {  // strictly smaller: ties keep the earlier split
                        best_fer = r.rate();
                        step.chosen = step.candidates[c];
                    }
                }
            }
            arr.set(n, k, step.chosen);
            if (observer) observer(step);
            if (!checkpoint_path.empty()) {
                TrainingCursor cur;
                cur.n = k == n ? n * 2 : n;
                cur.k = k == n ? 0 : k + 1;
                cur.seed = cfg.master_seed;
                cur.trials = cfg.trials;
                cur.ebn0_db = cfg.ebn0_db;
                save_checkpoint(arr, cur, checkpoint_path);
            }
        }
    }
    if (!checkpoint_path.empty()) save_minus_array(arr, checkpoint_path);
    return arr;
}

}  // namespace dppolar
