// Binary-input AWGN channel: BPSK modulation, noise sampling, LLR computation.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace dppolar {

using LlrVector = std::vector<double>;

// sigma^2 = 1 / (2 R 10^(EbN0/10)); the rate of the code under test enters
// the energy accounting.
struct AwgnChannel {
    double ebn0_db = 0.0;
    double rate = 1.0;
    double sigma = 1.0;

    AwgnChannel() = default;
    AwgnChannel(double ebn0_db_, double rate_) : ebn0_db(ebn0_db_), rate(rate_) {
        if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("rate must be in (0, 1]");
        const double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
        sigma = std::sqrt(sigma2);
        if (!std::isfinite(sigma) || sigma <= 0.0) throw std::invalid_argument("invalid noise level");
    }
};

// Bit 0 -> +1, bit 1 -> -1.
inline std::vector<double> modulate_bpsk(const BitVector& x) {
    std::vector<double> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? -1.0 : 1.0;
    return s;
}

inline std::vector<double> transmit(const std::vector<double>& symbols, const AwgnChannel& ch, RngStream& rng) {
    std::vector<double> y(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) y[i] = symbols[i] + ch.sigma * rng.next_gaussian();
    return y;
}

// LLR = log W(y|0)/W(y|1) = 2y/sigma^2; positive favors bit 0.
inline LlrVector llr_from_awgn(const std::vector<double>& y, const AwgnChannel& ch) {
    LlrVector llr(y.size());
    const double scale = 2.0 / (ch.sigma * ch.sigma);
    for (std::size_t i = 0; i < y.size(); ++i) llr[i] = scale * y[i];
    return llr;
}

}  // namespace dppolar
