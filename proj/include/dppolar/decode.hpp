// Successive-cancellation (SC) decoding, SC list (SCL) decoding with
// log-domain path metrics, and an exhaustive maximum-likelihood oracle.
//
// Check-node combination and path-metric penalty come in matched pairs:
// exact mode (default) uses the stabilized boxplus together with the penalty
// ln(1 + exp(-(1-2u)*llr)), so that a complete path's metric equals its exact
// negative log-likelihood up to a path-independent constant and full-list SCL
// ranks codewords exactly as ML does; min-sum mode pairs the min-sum
// approximation with the hard |llr|-on-mismatch penalty.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "channel.hpp"
#include "crc.hpp"

namespace dppolar {

struct DecoderOptions {
    bool min_sum = false;     // min-sum check node + hard mismatch penalty
    double llr_clamp = 300.0; // input saturation bound, keeps arithmetic finite
};

struct DecodeResult {
    BitVector message;        // u_hat restricted to info_set, ascending
    BitVector u_hat;          // full message vector, frozen positions zero
    bool success_flag = true; // with CRC: returned path passed the check
    double best_metric = 0.0; // SC/SCL: path metric (lower is better); ML: correlation
};

struct PathList {
    struct Entry {
        BitVector u_hat;
        double metric;
    };
    std::size_t list_size = 0;
    std::vector<Entry> entries;  // sorted by (metric, fork history)
};

namespace detail {

inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// ln((1 + e^{a+b}) / (e^a + e^b)); the sign applies to the correction terms
// too, since the box-plus is odd in each argument.
inline double f_exact(double a, double b) {
    const double aa = std::abs(a), ab = std::abs(b);
    return sign_of(a) * sign_of(b) *
           (std::min(aa, ab) + std::log1p(std::exp(-(aa + ab))) - std::log1p(std::exp(-std::abs(aa - ab))));
}

inline double f_minsum(double a, double b) {
    return sign_of(a) * sign_of(b) * std::min(std::abs(a), std::abs(b));
}

inline double g_update(double a, double b, std::uint8_t u) { return u ? b - a : b + a; }

// Penalty for deciding bit u against decision LLR lambda.
inline double penalty_exact(double lambda, std::uint8_t u) {
    const double t = u ? -lambda : lambda;
    return t >= 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

inline double penalty_hard(double lambda, std::uint8_t u) {
    const double t = u ? -lambda : lambda;
    return t < 0.0 ? -t : 0.0;
}

inline double penalty(double lambda, std::uint8_t u, bool min_sum) {
    return min_sum ? penalty_hard(lambda, u) : penalty_exact(lambda, u);
}

inline LlrVector clamp_llrs(const LlrVector& llr, double bound) {
    LlrVector out(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i) out[i] = std::clamp(llr[i], -bound, bound);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SC: independent recursive reference implementation.

namespace detail {

struct ScContext {
    const std::vector<std::uint8_t>& frozen;  // 1 = frozen
    bool min_sum;
    BitVector u_hat;
    double metric = 0.0;
};

// Decodes the subcode covering leaves [base, base+len); alpha holds its LLRs
// and is consumed; beta receives the subcode's re-encoded codeword.
inline void sc_recurse(ScContext& cx, double* alpha, std::size_t len, std::size_t base, std::uint8_t* beta) {
    if (len == 1) {
        std::uint8_t u;
        if (cx.frozen[base]) u = 0;
        else u = alpha[0] < 0.0 ? 1 : 0;  // LLR = 0 decodes to 0
        cx.metric += penalty(alpha[0], u, cx.min_sum);
        cx.u_hat[base] = u;
        beta[0] = u;
        return;
    }
    const std::size_t half = len / 2;
    std::vector<double> sub(half);
    std::vector<std::uint8_t> left_cw(half);
    for (std::size_t j = 0; j < half; ++j)
        sub[j] = cx.min_sum ? f_minsum(alpha[j], alpha[j + half]) : f_exact(alpha[j], alpha[j + half]);
    sc_recurse(cx, sub.data(), half, base, left_cw.data());
    for (std::size_t j = 0; j < half; ++j) sub[j] = g_update(alpha[j], alpha[j + half], left_cw[j]);
    sc_recurse(cx, sub.data(), half, base + half, beta + half);
    for (std::size_t j = 0; j < half; ++j) beta[j] = left_cw[j] ^ beta[j + half];
}

}  // namespace detail

inline DecodeResult sc_decode(const LlrVector& llr, const CodeSpec& spec, const DecoderOptions& opt = {}) {
    if (llr.size() != spec.n) throw std::invalid_argument("LLR length does not match code length");
    LlrVector alpha = detail::clamp_llrs(llr, opt.llr_clamp);
    const auto mask = spec.info_mask();
    std::vector<std::uint8_t> frozen(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) frozen[i] = !mask[i];
    detail::ScContext cx{frozen, opt.min_sum, BitVector(spec.n, 0), 0.0};
    BitVector beta(spec.n);
    detail::sc_recurse(cx, alpha.data(), spec.n, 0, beta.data());
    DecodeResult res;
    res.u_hat = std::move(cx.u_hat);
    res.best_metric = cx.metric;
    res.message.reserve(spec.k);
    for (std::size_t i : spec.info_set) res.message.push_back(res.u_hat[i]);
    return res;
}

// ---------------------------------------------------------------------------
// SCL: iterative, flat per-path buffers, copy-on-fork.

namespace detail {

struct SclPath {
    std::vector<double> llr;       // depths 1..m packed; depth d at n - (n >> (d-1))
    std::vector<std::uint8_t> cw;  // left-child codeword slot per depth, packed
    BitVector u;                   // decisions for leaves [0, phase)
    double metric = 0.0;

    static std::size_t llr_off(std::size_t n, int d) { return n - (n >> (d - 1)); }
    static std::size_t cw_off(std::size_t n, int d) { return n - (n >> d); }
};

class SclDecoder {
  public:
    SclDecoder(const LlrVector& llr, const CodeSpec& spec, std::size_t list_size, const DecoderOptions& opt)
        : spec_(spec), n_(spec.n), m_(spec.m), L_(list_size), opt_(opt),
          channel_(clamp_llrs(llr, opt.llr_clamp)), mask_(spec.info_mask()) {
        if (llr.size() != spec.n) throw std::invalid_argument("LLR length does not match code length");
        if (list_size < 1) throw std::invalid_argument("list size must be >= 1");
        scratch_a_.resize(n_);
        scratch_b_.resize(n_);
    }

    PathList run() {
        paths_.clear();
        paths_.push_back(std::make_unique<SclPath>(fresh_path()));
        for (std::size_t i = 0; i < n_; ++i) {
            compute_leaf_llrs(i);
            if (mask_[i]) fork(i);
            else freeze(i);
        }
        PathList out;
        out.list_size = L_;
        std::vector<std::size_t> order(paths_.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return paths_[a]->metric < paths_[b]->metric; });
        for (std::size_t idx : order) out.entries.push_back({std::move(paths_[idx]->u), paths_[idx]->metric});
        return out;
    }

  private:
    SclPath fresh_path() const {
        SclPath p;
        p.llr.resize(n_ > 1 ? n_ - 1 : 0);
        p.cw.resize(n_ > 1 ? n_ - 1 : 0);
        p.u.assign(n_, 0);
        return p;
    }

    const double* depth_llrs(const SclPath& p, int d) const {
        return d == 0 ? channel_.data() : p.llr.data() + SclPath::llr_off(n_, d);
    }

    // Refresh the decision LLR for leaf i on every path: one g-step where the
    // tree path turns right, f-steps below it.
    void compute_leaf_llrs(std::size_t i) {
        const int d0 = (i == 0) ? 1 : m_ - std::countr_zero(i);
        for (auto& pp : paths_) {
            SclPath& p = *pp;
            if (m_ == 0) break;  // single-leaf code: decision LLR is the channel LLR
            if (i != 0) {
                const double* src = depth_llrs(p, d0 - 1);
                const std::uint8_t* left = p.cw.data() + SclPath::cw_off(n_, d0 - 1);
                double* dst = p.llr.data() + SclPath::llr_off(n_, d0);
                const std::size_t len = n_ >> d0;
                for (std::size_t j = 0; j < len; ++j) dst[j] = g_update(src[j], src[j + len], left[j]);
            }
            for (int d = (i == 0) ? 1 : d0 + 1; d <= m_; ++d) {
                const double* src = depth_llrs(p, d - 1);
                double* dst = p.llr.data() + SclPath::llr_off(n_, d);
                const std::size_t len = n_ >> d;
                for (std::size_t j = 0; j < len; ++j)
                    dst[j] = opt_.min_sum ? f_minsum(src[j], src[j + len]) : f_exact(src[j], src[j + len]);
            }
        }
    }

    double leaf_llr(const SclPath& p) const {
        return m_ == 0 ? channel_[0] : p.llr[SclPath::llr_off(n_, m_)];
    }

    void freeze(std::size_t i) {
        for (auto& pp : paths_) {
            pp->metric += penalty(leaf_llr(*pp), 0, opt_.min_sum);
            append_decision(*pp, i, 0);
        }
    }

    struct Candidate {
        double metric;
        std::size_t parent;
        std::uint8_t bit;
    };

    void fork(std::size_t i) {
        std::vector<Candidate> cand;
        cand.reserve(2 * paths_.size());
        for (std::size_t p = 0; p < paths_.size(); ++p) {
            const double lam = leaf_llr(*paths_[p]);
            cand.push_back({paths_[p]->metric + penalty(lam, 0, opt_.min_sum), p, 0});
            cand.push_back({paths_[p]->metric + penalty(lam, 1, opt_.min_sum), p, 1});
        }
        if (cand.size() > L_) {
            // Deterministic prune: metric, then parent path index, then bit 0
            // before bit 1.
            std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
                if (a.metric != b.metric) return a.metric < b.metric;
                if (a.parent != b.parent) return a.parent < b.parent;
                return a.bit < b.bit;
            });
            cand.resize(L_);
        }
        std::vector<int> remaining(paths_.size(), 0);
        for (const auto& c : cand) ++remaining[c.parent];
        std::vector<std::unique_ptr<SclPath>> next;
        next.reserve(cand.size());
        for (const auto& c : cand) {
            std::unique_ptr<SclPath> child;
            if (--remaining[c.parent] == 0) child = std::move(paths_[c.parent]);
            else child = std::make_unique<SclPath>(*paths_[c.parent]);
            child->metric = c.metric;
            append_decision(*child, i, c.bit);
            next.push_back(std::move(child));
        }
        paths_ = std::move(next);
    }

    // Record u_i and push re-encoded codewords up through every completed
    // right child; only left-sibling codewords are ever read back, so right
    // halves are combined upward without being stored.
    void append_decision(SclPath& p, std::size_t i, std::uint8_t bit) {
        p.u[i] = bit;
        if (m_ == 0) return;
        std::uint8_t* cur = scratch_a_.data();
        std::uint8_t* tmp = scratch_b_.data();
        cur[0] = bit;
        std::size_t len = 1;
        for (int d = m_; d > 0; --d) {
            if (((i >> (m_ - d)) & 1) == 0) {
                std::copy(cur, cur + len, p.cw.data() + SclPath::cw_off(n_, d - 1));
                return;
            }
            if (d == 1) return;  // root codeword complete; nothing stores it
            const std::uint8_t* left = p.cw.data() + SclPath::cw_off(n_, d - 1);
            for (std::size_t j = 0; j < len; ++j) {
                tmp[j] = left[j] ^ cur[j];
                tmp[len + j] = cur[j];
            }
            std::swap(cur, tmp);
            len *= 2;
        }
    }

    const CodeSpec& spec_;
    std::size_t n_;
    int m_;
    std::size_t L_;
    DecoderOptions opt_;
    LlrVector channel_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::unique_ptr<SclPath>> paths_;
    std::vector<std::uint8_t> scratch_a_, scratch_b_;
};

}  // namespace detail

inline PathList scl_decode_list(const LlrVector& llr, const CodeSpec& spec, std::size_t list_size,
                                const DecoderOptions& opt = {}) {
    detail::SclDecoder dec(llr, spec, list_size, opt);
    return dec.run();
}

inline DecodeResult scl_decode(const LlrVector& llr, const CodeSpec& spec, std::size_t list_size,
                               const std::optional<CrcSpec>& crc = std::nullopt,
                               const DecoderOptions& opt = {}) {
    PathList list = scl_decode_list(llr, spec, list_size, opt);
    auto to_result = [&](const PathList::Entry& e, bool ok) {
        DecodeResult r;
        r.u_hat = e.u_hat;
        r.best_metric = e.metric;
        r.success_flag = ok;
        r.message.reserve(spec.k);
        for (std::size_t i : spec.info_set) r.message.push_back(e.u_hat[i]);
        return r;
    };
    if (!crc || crc->length == 0) return to_result(list.entries.front(), true);
    for (const auto& e : list.entries) {
        BitVector msg;
        msg.reserve(spec.k);
        for (std::size_t i : spec.info_set) msg.push_back(e.u_hat[i]);
        if (crc_check(msg, *crc)) return to_result(e, true);
    }
    return to_result(list.entries.front(), false);
}

// ---------------------------------------------------------------------------
// ML oracle.

inline double codeword_correlation(const BitVector& x, const LlrVector& llr) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] ? -llr[i] : llr[i];
    return s;
}

// Exhaustive max-correlation over all 2^k codewords; ties resolve to the
// lexicographically smallest message.
inline DecodeResult ml_decode(const LlrVector& llr, const CodeSpec& spec) {
    if (llr.size() != spec.n) throw std::invalid_argument("LLR length does not match code length");
    if (spec.k > 20) throw std::invalid_argument("ml_decode limited to k <= 20");
    DecodeResult best;
    double best_corr = -std::numeric_limits<double>::infinity();
    BitVector msg(spec.k, 0);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << spec.k); ++j) {
        for (std::size_t t = 0; t < spec.k; ++t) msg[t] = static_cast<std::uint8_t>((j >> (spec.k - 1 - t)) & 1);
        const BitVector x = encode(msg, spec);
        const double corr = codeword_correlation(x, llr);
        if (corr > best_corr) {
            best_corr = corr;
            best.message = msg;
        }
    }
    best.best_metric = best_corr;
    best.u_hat.assign(spec.n, 0);
    for (std::size_t t = 0; t < spec.k; ++t) best.u_hat[spec.info_set[t]] = best.message[t];
    best.success_flag = true;
    return best;
}

}  // namespace dppolar
