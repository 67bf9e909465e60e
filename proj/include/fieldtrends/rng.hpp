#pragma once

#include <cmath>
#include <cstdint>

#include "fieldtrends/stats.hpp"

namespace fieldtrends {

// SplitMix64 (Steele, Lea & Flood 2014), constants from Vigna's public-domain
// reference implementation. The generator is pinned so that corpora produced
// from equal seeds are reproducible; OS entropy is never consulted.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // 53-bit uniform in [0, 1); one raw draw.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; one raw draw. Used where log(u) must stay finite.
    double uniform_open0() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. Consumes exactly two raw draws and keeps
    // no cached second value, so the stream layout is position-independent.
    double normal() {
        const double u1 = uniform_open0();
        const double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    std::uint64_t state_;
};

namespace detail {

// P(X <= k) for X ~ Binomial(n, p), via I_{1-p}(n-k, k+1).
inline double binomial_cdf(std::int64_t k, std::int64_t n, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    return regularized_incomplete_beta(static_cast<double>(n - k),
                                       static_cast<double>(k + 1), 1.0 - p);
}

}  // namespace detail

// Binomial(n, p) by inverse-CDF bisection. Always consumes exactly one raw
// draw, including the p = 0 / p = 1 / n = 0 edge cases, so callers can rely
// on a fixed stream layout.
inline std::int64_t binomial_draw(SplitMix64& rng, std::int64_t n, double p) {
    const double u = rng.uniform01();
    if (n <= 0) return 0;
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::int64_t lo = 0;
    std::int64_t hi = n;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (detail::binomial_cdf(mid, n, p) >= u) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace fieldtrends
