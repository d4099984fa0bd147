// Counter-based random number generation (Philox4x32-10) with per-trial
// streams: identical (master_seed, stream_index) always yields the same draws
// regardless of thread scheduling, which makes parallel Monte Carlo runs
// reproducible and their aggregates independent of worker count.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace dppolar {

namespace detail {

struct PhiloxBlock {
    std::array<std::uint32_t, 4> x;
};

// One 10-round Philox4x32 block: the standard multipliers and Weyl constants.
inline PhiloxBlock philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint64_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    std::uint32_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int r = 0; r < 10; ++r) {
        const std::uint64_t p0 = M0 * x0;
        const std::uint64_t p1 = M1 * x2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        x0 = hi1 ^ x1 ^ k0;
        x1 = lo1;
        x2 = hi0 ^ x3 ^ k1;
        x3 = lo0;
        k0 += W0;
        k1 += W1;
    }
    return {{x0, x1, x2, x3}};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic combination of context values into a stream index.
inline std::uint64_t mix_stream(std::uint64_t a, std::uint64_t b) {
    return detail::splitmix64(a ^ detail::splitmix64(b));
}

class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream_index)),
          stream_hi_(static_cast<std::uint32_t>(stream_index >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return block_.x[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on (0, 1]: 53-bit mantissa, zero excluded so log() stays finite.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint8_t next_bit() { return static_cast<std::uint8_t>(next_u32() >> 31); }

  private:
    void refill() {
        block_ = detail::philox4x32_10({counter_lo_, counter_hi_, stream_lo_, stream_hi_}, key_);
        pos_ = 0;
        if (++counter_lo_ == 0) ++counter_hi_;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint32_t counter_lo_ = 0, counter_hi_ = 0;
    detail::PhiloxBlock block_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dppolar
