#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace emph {

// Deterministic random source. The distribution transforms are written out
// by hand because the std::*_distribution algorithms are implementation
// defined, and reruns with the same seed must be byte-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Standard normal via Box-Muller (cosine branch; one draw per call, no
    // cached state).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Uniform integer in [0, n); used for deterministic shuffles.
    std::uint64_t below(std::uint64_t n) {
        return gen_() % n;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace emph
