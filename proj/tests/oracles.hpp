// Independent reference implementations used only by the tests. Each one is
// deliberately written in a different style from the library code (dense
// matrices, direct marginalization, textbook long division) so that
// agreement is meaningful.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dppolar/core.hpp"

namespace oracles {

// Dense generator matrix: m-fold Kronecker power of [[1,0],[1,1]].
inline std::vector<std::vector<std::uint8_t>> kernel_tensor_power(int m) {
    std::vector<std::vector<std::uint8_t>> g{{1}};
    for (int s = 0; s < m; ++s) {
        const std::size_t sz = g.size();
        std::vector<std::vector<std::uint8_t>> h(2 * sz, std::vector<std::uint8_t>(2 * sz, 0));
        for (std::size_t r = 0; r < sz; ++r)
            for (std::size_t c = 0; c < sz; ++c) {
                // [[1,0],[1,1]] (x) g: top-left g, bottom-left g, bottom-right g
                h[r][c] = g[r][c];
                h[r + sz][c] = g[r][c];
                h[r + sz][c + sz] = g[r][c];
            }
        g.swap(h);
    }
    return g;
}

inline dppolar::BitVector matrix_encode(const dppolar::BitVector& u,
                                        const std::vector<std::vector<std::uint8_t>>& g) {
    dppolar::BitVector x(g.size(), 0);
    for (std::size_t c = 0; c < x.size(); ++c)
        for (std::size_t r = 0; r < u.size(); ++r) x[c] ^= static_cast<std::uint8_t>(u[r] & g[r][c]);
    return x;
}

// Textbook polynomial long division: bring down one coefficient at a time.
// poly_bits holds the divisor MSB first including the leading 1.
inline dppolar::BitVector long_division_remainder(const dppolar::BitVector& message,
                                                  const dppolar::BitVector& poly_bits) {
    const std::size_t deg = poly_bits.size() - 1;
    dppolar::BitVector work = message;
    work.insert(work.end(), deg, 0);
    for (std::size_t i = 0; i + deg < work.size(); ++i)
        if (work[i])
            for (std::size_t j = 0; j <= deg; ++j) work[i + j] ^= poly_bits[j];
    return dppolar::BitVector(work.end() - static_cast<std::ptrdiff_t>(deg), work.end());
}

// Per-bit likelihoods from an LLR viewed as a sufficient statistic:
// P(y|x) proportional to exp((1-2x) * llr / 2).
inline double codeword_likelihood(const dppolar::BitVector& x, const std::vector<double>& llr) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] ? -0.5 : 0.5) * llr[i];
    return std::exp(s);
}

// Exact decision LLR of leaf i given earlier decisions, by brute-force
// marginalization over all later bits (uniform), for codes small enough to
// enumerate. This is the quantity the f/g recursion claims to compute.
inline double marginal_leaf_llr(const std::vector<double>& llr, const dppolar::BitVector& u_prefix,
                                std::size_t i) {
    const std::size_t n = llr.size();
    if (n > 16) throw std::invalid_argument("marginal oracle limited to n <= 16");
    const std::size_t tail = n - i - 1;
    double num = 0.0, den = 0.0;
    dppolar::BitVector u(n, 0);
    for (std::size_t t = 0; t < i; ++t) u[t] = u_prefix[t];
    for (int b = 0; b < 2; ++b) {
        u[i] = static_cast<std::uint8_t>(b);
        double sum = 0.0;
        for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << tail); ++rest) {
            for (std::size_t t = 0; t < tail; ++t) u[i + 1 + t] = static_cast<std::uint8_t>((rest >> t) & 1);
            sum += codeword_likelihood(dppolar::polar_transform(u), llr);
        }
        (b == 0 ? num : den) = sum;
    }
    return std::log(num) - std::log(den);
}

// Reference box-plus through tanh, the defining identity.
inline double boxplus_tanh(double a, double b) { return 2.0 * std::atanh(std::tanh(a / 2.0) * std::tanh(b / 2.0)); }

}  // namespace oracles
