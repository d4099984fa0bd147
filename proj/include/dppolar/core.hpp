// Polar transform over GF(2), code specifications, index arithmetic, and
// Reed-Muller information sets.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dppolar {

using BitVector = std::vector<std::uint8_t>;

inline bool is_power_of_two(std::size_t x) { return x > 0 && (x & (x - 1)) == 0; }

inline int log2_exact(std::size_t x) {
    if (!is_power_of_two(x)) throw std::invalid_argument("length must be a power of two");
    return std::countr_zero(x);
}

inline int wt(std::uint64_t i) { return std::popcount(i); }

// Sign sequence s(i): the m-digit binary expansion of i, most significant
// digit first, with 0 -> '-' and 1 -> '+'.
struct SignSequence {
    std::vector<char> symbols;  // each '+' or '-'

    std::string str() const { return std::string(symbols.begin(), symbols.end()); }
};

inline SignSequence index_to_sign_sequence(std::uint64_t i, int m) {
    if (m < 0 || (m < 64 && i >= (std::uint64_t{1} << m)))
        throw std::invalid_argument("index out of range for sign sequence");
    SignSequence s;
    s.symbols.resize(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b)
        s.symbols[static_cast<std::size_t>(b)] = ((i >> (m - 1 - b)) & 1) ? '+' : '-';
    return s;
}

struct CodeSpec {
    int m = 0;                       // log2 of code length
    std::size_t n = 1;               // code length
    std::size_t k = 0;               // dimension
    std::vector<std::size_t> info_set;  // sorted information indices, |info_set| = k

    CodeSpec() = default;
    CodeSpec(std::size_t n_, std::vector<std::size_t> info) : n(n_), info_set(std::move(info)) {
        m = log2_exact(n);
        std::sort(info_set.begin(), info_set.end());
        info_set.erase(std::unique(info_set.begin(), info_set.end()), info_set.end());
        k = info_set.size();
        if (!info_set.empty() && info_set.back() >= n)
            throw std::invalid_argument("information index out of range");
    }

    std::vector<std::uint8_t> info_mask() const {
        std::vector<std::uint8_t> mask(n, 0);
        for (std::size_t i : info_set) mask[i] = 1;
        return mask;
    }
};

// In-place butterfly computing u * [[1,0],[1,1]]^{tensor m} over GF(2).
// Natural (non-bit-reversed) indexing throughout.
inline void polar_transform_inplace(BitVector& u) {
    const std::size_t n = u.size();
    (void)log2_exact(n);
    for (std::size_t half = 1; half < n; half <<= 1)
        for (std::size_t start = 0; start < n; start += 2 * half)
            for (std::size_t i = start; i < start + half; ++i)
                u[i] ^= u[i + half];
}

inline BitVector polar_transform(BitVector u) {
    polar_transform_inplace(u);
    return u;
}

// Scatter message bits into info_set positions (ascending), zeros elsewhere,
// then apply the transform. Frozen positions carry 0.
inline BitVector encode(const BitVector& message_bits, const CodeSpec& spec) {
    if (message_bits.size() != spec.k)
        throw std::invalid_argument("message length does not match code dimension");
    BitVector u(spec.n, 0);
    for (std::size_t t = 0; t < spec.k; ++t) u[spec.info_set[t]] = message_bits[t] & 1;
    polar_transform_inplace(u);
    return u;
}

inline std::uint64_t binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    std::uint64_t r = 1;
    for (int j = 0; j < b; ++j) r = r * static_cast<std::uint64_t>(a - j) / static_cast<std::uint64_t>(j + 1);
    return r;
}

// Reed-Muller RM(m, r): rows of weight >= m - r.
inline CodeSpec rm_info_set(int m, int r) {
    if (m < 0 || r < 0 || r > m) throw std::invalid_argument("require 0 <= r <= m");
    std::vector<std::size_t> info;
    const std::size_t n = std::size_t{1} << m;
    for (std::size_t i = 0; i < n; ++i)
        if (wt(i) >= m - r) info.push_back(i);
    return CodeSpec(n, std::move(info));
}

}  // namespace dppolar
