// Information-set construction. Three routes:
//   * minus_construct       — recursive split driven by a trained minus array
//   * standard_construct    — genie-aided successive-cancellation Monte Carlo
//   * construct_gaussian_approx — density-evolution Gaussian approximation
// All ties between equally reliable indices resolve toward the larger index.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "core.hpp"
#include "decode.hpp"
#include "mc.hpp"
#include "minus_array.hpp"
#include "rng.hpp"

namespace dppolar {

// ---------------------------------------------------------------------------
// Minus-array driven construction.
//
// A length-n code of dimension k splits into two half-length codes: the first
// (minus) half receives minus(n, k) information bits, the second the rest.
// Applying the split level by level down to length-1 segments yields the
// information set directly: a length-1 segment of dimension 1 is one
// information position.
inline std::vector<std::size_t> minus_construct(std::size_t n, std::size_t k, const MinusArray& arr) {
    if (!is_power_of_two(n) || n < 1) throw std::invalid_argument("n must be a power of two >= 1");
    if (k > n) throw std::invalid_argument("k must be in [0, n]");
    std::vector<std::size_t> dims{k};  // dims[p] = dimension of segment p at the current level
    for (std::size_t len = n; len >= 2; len /= 2) {
        std::vector<std::size_t> next(dims.size() * 2);
        for (std::size_t p = 0; p < dims.size(); ++p) {
            const std::size_t kp = dims[p];
            const int km = kp == 0 ? 0 : (kp == len ? static_cast<int>(len / 2) : arr.minus(len, kp));
            if (km < minus_range_lo(len, kp) || km > minus_range_hi(len, kp))
                throw MinusArrayError("minus value out of range at (n=" + std::to_string(len) +
                                      ", k=" + std::to_string(kp) + ")");
            next[2 * p] = static_cast<std::size_t>(km);
            next[2 * p + 1] = kp - static_cast<std::size_t>(km);
        }
        dims.swap(next);
    }
    std::vector<std::size_t> info;
    info.reserve(k);
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (dims[i] == 1) info.push_back(i);
    return info;
}

// ---------------------------------------------------------------------------
// Gaussian approximation (mean-LLR density evolution).
namespace detail {

// phi(x) ~= 1 - E[tanh(L/2)] for L ~ N(x, 2x); piecewise fit.
inline double ga_phi(double x) {
    if (x <= 0) return 1.0;
    if (x < 10.0) return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
    return std::sqrt(3.14159265358979323846 / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

inline double ga_phi_inv(double y) {
    if (y >= 1.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (ga_phi(hi) > y) hi *= 2.0;  // phi is decreasing
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Mean LLR of each synthetic channel for BPSK on AWGN with noise deviation
// sigma. Index bits are consumed most-significant first; bit 0 applies the
// minus transform, bit 1 the plus transform.
inline std::vector<double> ga_mean_llrs(std::size_t n, double sigma) {
    if (!is_power_of_two(n) || n < 1) throw std::invalid_argument("n must be a power of two >= 1");
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    std::vector<double> means{2.0 / (sigma * sigma)};
    while (means.size() < n) {
        std::vector<double> next(means.size() * 2);
        for (std::size_t j = 0; j < means.size(); ++j) {
            const double p = detail::ga_phi(means[j]);
            next[2 * j] = detail::ga_phi_inv(2.0 * p - p * p);
            next[2 * j + 1] = 2.0 * means[j];
        }
        means.swap(next);
    }
    return means;
}

namespace detail {

// Pick the k most reliable indices given a score where higher is better;
// ties go to the larger index. Returns the set in ascending order.
inline std::vector<std::size_t> top_k_by_score(const std::vector<double>& score, std::size_t k) {
    if (k > score.size()) throw std::invalid_argument("k exceeds block length");
    std::vector<std::size_t> order(score.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a > b;
    });
    std::vector<std::size_t> info(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(info.begin(), info.end());
    return info;
}

}  // namespace detail

inline std::vector<std::size_t> construct_gaussian_approx(std::size_t n, std::size_t k, double sigma) {
    return detail::top_k_by_score(ga_mean_llrs(n, sigma), k);
}

inline std::vector<std::size_t> construct_gaussian_approx(std::size_t n, std::size_t k, double design_ebn0_db,
                                                          double rate) {
    return construct_gaussian_approx(n, k, AwgnChannel(design_ebn0_db, rate).sigma);
}

// ---------------------------------------------------------------------------
// Genie-aided Monte Carlo construction.
namespace detail {

inline constexpr std::uint64_t kGenieSalt = 0x67656E69;  // stream-domain tag

// Successive cancellation with a genie: each bit decision is made from LLRs
// computed as if every earlier decision had been correct (the true bits are
// substituted), and first-decision errors are counted per position. Returns
// the true codeword of the segment so the parent can run its g-step on
// correct data.
inline void genie_sc_recurse(const double* alpha, std::size_t len, const std::uint8_t* u_true,
                             std::size_t base, std::vector<double>& scratch, std::uint8_t* beta,
                             std::vector<std::uint64_t>& errors) {
    if (len == 1) {
        const std::uint8_t decision = *alpha < 0.0 ? 1 : 0;
        if (decision != u_true[0]) ++errors[base];
        beta[0] = u_true[0];
        return;
    }
    const std::size_t half = len / 2;
    double* sub = scratch.data() + len;  // nested calls use disjoint tails
    for (std::size_t j = 0; j < half; ++j) sub[j] = f_exact(alpha[j], alpha[j + half]);
    genie_sc_recurse(sub, half, u_true, base, scratch, beta, errors);
    for (std::size_t j = 0; j < half; ++j) sub[j] = g_update(alpha[j], alpha[j + half], beta[j]);
    genie_sc_recurse(sub, half, u_true + half, base + half, scratch, beta + half, errors);
    for (std::size_t j = 0; j < half; ++j) beta[j] ^= beta[j + half];
}

}  // namespace detail

// errors[i] = number of trials in which the genie-aided decoder's first guess
// at u_i was wrong. Reliability ranking: fewer errors first, ties toward the
// larger index.
inline std::vector<std::uint64_t> genie_error_counts(std::size_t n, double design_ebn0_db, double rate,
                                                     std::size_t trials, std::uint64_t seed,
                                                     unsigned workers = 1) {
    if (!is_power_of_two(n) || n < 2) throw std::invalid_argument("n must be a power of two >= 2");
    const AwgnChannel channel(design_ebn0_db, rate);
    return monte_carlo_counts(trials, workers, n, [&](std::uint64_t trial, std::vector<std::uint64_t>& acc) {
        RngStream rng(seed, mix_stream(detail::kGenieSalt, trial));
        BitVector u(n);
        for (auto& b : u) b = rng.next_bit();
        const BitVector x = polar_transform(u);
        const LlrVector llr = llr_from_awgn(transmit(modulate_bpsk(x), channel, rng), channel);
        std::vector<double> scratch(2 * n);
        BitVector beta(n);
        detail::genie_sc_recurse(llr.data(), n, u.data(), 0, scratch, beta.data(), acc);
    });
}

inline std::vector<std::size_t> standard_construct(std::size_t n, std::size_t k, double design_ebn0_db,
                                                   std::size_t trials, std::uint64_t seed,
                                                   unsigned workers = 1) {
    if (k > n) throw std::invalid_argument("k must be in [0, n]");
    if (k == 0) return {};
    const double rate = static_cast<double>(k) / static_cast<double>(n);
    const auto errors = genie_error_counts(n, design_ebn0_db, rate, trials, seed, workers);
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) score[i] = -static_cast<double>(errors[i]);
    return detail::top_k_by_score(score, k);
}

}  // namespace dppolar
