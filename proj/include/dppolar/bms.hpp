// Discrete binary-input memoryless symmetric channels and the single-step
// synthetic-channel transforms
//   W-(y0,y1|u0)    = 1/2 sum_u1 W(y0|u0+u1) W(y1|u1)
//   W+(u0,y0,y1|u1) = 1/2 W(y0|u0+u1) W(y1|u1)
// over explicit product output alphabets. Verification-scale only; the
// simulation hot path never touches these.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dppolar {

struct DiscreteBms {
    // w[x][y] = W(y|x) for x in {0,1} over output alphabet {0..q-1}.
    std::vector<double> w0, w1;
    // Involutive symmetry permutation with W(y|1) = W(pi(y)|0).
    std::vector<std::size_t> pi;

    std::size_t alphabet_size() const { return w0.size(); }
};

inline constexpr std::size_t kBmsAlphabetLimit = 1u << 20;

inline void validate_bms(const DiscreteBms& w, double tol = 1e-12) {
    const std::size_t q = w.alphabet_size();
    if (w.w1.size() != q || w.pi.size() != q) throw std::invalid_argument("inconsistent channel table sizes");
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t y = 0; y < q; ++y) {
        if (w.w0[y] < 0.0 || w.w1[y] < 0.0) throw std::invalid_argument("negative transition probability");
        s0 += w.w0[y];
        s1 += w.w1[y];
    }
    if (std::abs(s0 - 1.0) > tol || std::abs(s1 - 1.0) > tol)
        throw std::invalid_argument("transition rows must sum to 1");
    for (std::size_t y = 0; y < q; ++y) {
        if (w.pi[y] >= q || w.pi[w.pi[y]] != y) throw std::invalid_argument("symmetry permutation not involutive");
        if (std::abs(w.w1[y] - w.w0[w.pi[y]]) > tol)
            throw std::invalid_argument("symmetry W(y|1) = W(pi(y)|0) violated");
    }
}

// Binary erasure channel over outputs {0: "0", 1: "1", 2: erasure}.
inline DiscreteBms make_bec(double eps) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("erasure probability must be in [0,1]");
    DiscreteBms w;
    w.w0 = {1.0 - eps, 0.0, eps};
    w.w1 = {0.0, 1.0 - eps, eps};
    w.pi = {1, 0, 2};
    return w;
}

inline DiscreteBms bms_minus(const DiscreteBms& w) {
    const std::size_t q = w.alphabet_size();
    if (q * q > kBmsAlphabetLimit) throw std::invalid_argument("minus transform alphabet too large");
    DiscreteBms out;
    out.w0.resize(q * q);
    out.w1.resize(q * q);
    out.pi.resize(q * q);
    for (std::size_t y0 = 0; y0 < q; ++y0) {
        for (std::size_t y1 = 0; y1 < q; ++y1) {
            const std::size_t y = y0 * q + y1;
            out.w0[y] = 0.5 * (w.w0[y0] * w.w0[y1] + w.w1[y0] * w.w1[y1]);
            out.w1[y] = 0.5 * (w.w1[y0] * w.w0[y1] + w.w0[y0] * w.w1[y1]);
            out.pi[y] = w.pi[y0] * q + y1;
        }
    }
    return out;
}

inline DiscreteBms bms_plus(const DiscreteBms& w) {
    const std::size_t q = w.alphabet_size();
    if (2 * q * q > kBmsAlphabetLimit) throw std::invalid_argument("plus transform alphabet too large");
    DiscreteBms out;
    out.w0.resize(2 * q * q);
    out.w1.resize(2 * q * q);
    out.pi.resize(2 * q * q);
    for (std::size_t u0 = 0; u0 < 2; ++u0) {
        for (std::size_t y0 = 0; y0 < q; ++y0) {
            for (std::size_t y1 = 0; y1 < q; ++y1) {
                const std::size_t y = (u0 * q + y0) * q + y1;
                const double a = u0 ? w.w1[y0] : w.w0[y0];  // W(y0 | u0 + 0)
                const double b = u0 ? w.w0[y0] : w.w1[y0];  // W(y0 | u0 + 1)
                out.w0[y] = 0.5 * a * w.w0[y1];
                out.w1[y] = 0.5 * b * w.w1[y1];
                out.pi[y] = (u0 * q + w.pi[y0]) * q + w.pi[y1];
            }
        }
    }
    return out;
}

// Mutual information with uniform input, in bits.
inline double capacity(const DiscreteBms& w) {
    double c = 0.0;
    for (std::size_t y = 0; y < w.alphabet_size(); ++y) {
        const double p = 0.5 * (w.w0[y] + w.w1[y]);
        if (w.w0[y] > 0.0) c += 0.5 * w.w0[y] * std::log2(w.w0[y] / p);
        if (w.w1[y] > 0.0) c += 0.5 * w.w1[y] * std::log2(w.w1[y] / p);
    }
    return c;
}

// If every output is perfectly informative or a pure erasure, the channel is
// equivalent to a BEC; returns its erasure probability, or nullopt otherwise.
inline std::optional<double> bec_erasure_rate(const DiscreteBms& w, double tol = 1e-12) {
    double eps = 0.0;
    for (std::size_t y = 0; y < w.alphabet_size(); ++y) {
        const double a = w.w0[y], b = w.w1[y];
        if (a <= tol && b <= tol) continue;        // unused output
        if (std::abs(a - b) <= tol) eps += a;      // erasure class
        else if (a > tol && b > tol) return std::nullopt;  // noisy but not erased
    }
    return eps;
}

}  // namespace dppolar
