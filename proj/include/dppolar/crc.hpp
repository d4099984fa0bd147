// Outer parity checks appended to the message: either seeded random linear
// parities (full-rank generator, redrawn on rank deficiency) or a polynomial
// CRC remainder. The parity bits ride in the last crc_len information
// positions of the inner code.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace dppolar {

enum class CrcKind { random_linear, polynomial };

inline constexpr std::uint64_t kDefaultCrcSeed = 0x70617269u;  // documented default

struct CrcSpec {
    std::size_t length = 0;  // number of parity bits
    CrcKind kind = CrcKind::random_linear;
    std::uint64_t seed = kDefaultCrcSeed;  // random_linear only
    BitVector poly;                        // polynomial only, MSB first, degree = length

    static CrcSpec random_linear(std::size_t length, std::uint64_t seed = kDefaultCrcSeed) {
        CrcSpec c;
        c.length = length;
        c.kind = CrcKind::random_linear;
        c.seed = seed;
        return c;
    }

    // Coefficient string MSB first, e.g. "1011" = x^3 + x + 1 (3 parity bits).
    static CrcSpec polynomial(const std::string& coeffs) {
        CrcSpec c;
        c.kind = CrcKind::polynomial;
        for (char ch : coeffs) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("polynomial coefficients must be 0/1");
            c.poly.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        if (c.poly.empty() || c.poly.front() != 1)
            throw std::invalid_argument("polynomial must start with a 1 coefficient");
        c.length = c.poly.size() - 1;
        return c;
    }
};

namespace detail {

// Seeded parity matrix P (length x k), redrawn until full rank over GF(2).
inline std::vector<BitVector> crc_parity_matrix(std::size_t len, std::size_t k, std::uint64_t seed) {
    if (len > k) throw std::invalid_argument("full-rank parity matrix needs crc_len <= k");
    for (std::uint64_t draw = 0;; ++draw) {
        RngStream rng(seed, mix_stream(0x6372632Du, draw));
        std::vector<BitVector> p(len, BitVector(k));
        for (auto& row : p)
            for (auto& b : row) b = rng.next_bit();
        // Gaussian elimination on a copy to test rank.
        std::vector<BitVector> e = p;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < k && rank < len; ++col) {
            std::size_t piv = rank;
            while (piv < len && !e[piv][col]) ++piv;
            if (piv == len) continue;
            std::swap(e[rank], e[piv]);
            for (std::size_t r = 0; r < len; ++r)
                if (r != rank && e[r][col])
                    for (std::size_t c = 0; c < k; ++c) e[r][c] ^= e[rank][c];
            ++rank;
        }
        if (rank == len) return p;
    }
}

inline BitVector crc_poly_remainder(const BitVector& message, const BitVector& poly) {
    const std::size_t deg = poly.size() - 1;
    BitVector reg(deg, 0);
    auto shift_in = [&](std::uint8_t bit) {
        const std::uint8_t out = deg ? reg[0] : bit;
        for (std::size_t i = 0; i + 1 < deg; ++i) reg[i] = reg[i + 1];
        if (deg) reg[deg - 1] = bit;
        if (out)
            for (std::size_t i = 0; i < deg; ++i) reg[i] ^= poly[i + 1];
    };
    for (std::uint8_t b : message) shift_in(b);
    for (std::size_t i = 0; i < deg; ++i) shift_in(0);
    return reg;
}

}  // namespace detail

namespace detail {

// Decoders evaluate parities once per path; memoize the matrix per thread so
// repeated checks against one spec cost only the multiply.
inline const std::vector<BitVector>& cached_parity_matrix(std::size_t len, std::size_t k, std::uint64_t seed) {
    thread_local std::size_t mlen = 0, mk = 0;
    thread_local std::uint64_t mseed = 0;
    thread_local std::vector<BitVector> matrix;
    if (matrix.empty() || mlen != len || mk != k || mseed != seed) {
        matrix = crc_parity_matrix(len, k, seed);
        mlen = len;
        mk = k;
        mseed = seed;
    }
    return matrix;
}

}  // namespace detail

inline BitVector crc_parity(const BitVector& message, const CrcSpec& crc) {
    if (crc.length == 0) return {};
    if (crc.kind == CrcKind::polynomial) return detail::crc_poly_remainder(message, crc.poly);
    const auto& p = detail::cached_parity_matrix(crc.length, message.size(), crc.seed);
    BitVector parity(crc.length, 0);
    for (std::size_t r = 0; r < crc.length; ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c = 0; c < message.size(); ++c) acc ^= static_cast<std::uint8_t>(p[r][c] & message[c]);
        parity[r] = acc;
    }
    return parity;
}

inline BitVector crc_attach(const BitVector& message, const CrcSpec& crc) {
    BitVector out = message;
    const BitVector parity = crc_parity(message, crc);
    out.insert(out.end(), parity.begin(), parity.end());
    return out;
}

inline bool crc_check(const BitVector& bits, const CrcSpec& crc) {
    if (bits.size() < crc.length) return false;
    const BitVector message(bits.begin(), bits.end() - static_cast<std::ptrdiff_t>(crc.length));
    const BitVector parity(bits.end() - static_cast<std::ptrdiff_t>(crc.length), bits.end());
    return crc_parity(message, crc) == parity;
}

}  // namespace dppolar
