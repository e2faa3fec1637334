#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace vecsum {

// SplitMix64: cheap statistically-solid stream for deriving sub-seeds
// from one master seed. Deterministic across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Deterministic normal deviates: mt19937_64 plus an explicit Box-Muller
// transform. std::normal_distribution is implementation-defined, which
// would break byte-identical CSV output across standard libraries.
class GaussianGen {
public:
    explicit GaussianGen(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01_();
        while (u1 <= 0.0) u1 = uniform01_();
        double u2 = uniform01_();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double next(double mu, double sigma) { return mu + sigma * next(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return uniform01_(); }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x = eng_();
        while (x >= limit) x = eng_();
        return x / (UINT64_MAX / n);
    }

private:
    double uniform01_() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace vecsum
