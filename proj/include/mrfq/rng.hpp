#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mrfq/common.hpp"

namespace mrfq {

/// Reproducible random source: std::mt19937_64 (bit-exact across platforms by
/// the standard) with our own value mappings, because the standard library's
/// distributions are not portable.
///
/// Mappings:
///   - uniform01: top 53 bits of one engine draw, scaled by 2^-53 -> [0, 1)
///   - uniform(a, b): a + uniform01 * (b - a)
///   - gaussian: Box-Muller, cosine branch only, consuming exactly two
///     uniform draws per call (u1 from (0,1], u2 from [0,1)):
///       z = sqrt(-2 ln u1) * cos(2 pi u2)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    double gaussian(double mean = 0.0, double stddev = 1.0) {
        const double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        return mean + stddev * z;
    }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo is fine here: n is always tiny versus 2^64,
        // so the bias is far below anything observable.
        return engine_() % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mrfq
