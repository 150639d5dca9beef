#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace subsep {

/**
 * Deterministic random stream for the synthetic generators.
 *
 * std::mt19937_64 has a fully specified output sequence, but the standard
 * distributions built on top of it are implementation-defined. The mappings
 * below are fixed, so a given seed produces identical draws on every
 * platform and standard library.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// +1 or -1 with equal probability.
    double sign() { return uniform() < 0.5 ? 1.0 : -1.0; }

    /// Standard normal via Box-Muller; pairs are cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace subsep
