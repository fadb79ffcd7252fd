#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace dll {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent random stream, a pure function of (seed, domain, index).
/// Streams for distinct (domain, index) pairs are uncorrelated regardless of
/// how work is distributed over threads, which is what makes simulations
/// reproducible for a fixed seed at any degree of parallelism. Variates are
/// generated from raw 64-bit draws rather than std::*_distribution so the
/// sequences do not depend on the standard-library implementation.
class RngStream {
public:
    enum class Domain : std::uint64_t {
        protocol = 1,
        trace = 2,
        ppc = 3,
        chain = 4,
        synthetic = 5,
    };

    RngStream(std::uint64_t seed, Domain domain, std::uint64_t index)
        : gen_(splitmix64(splitmix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(domain)) +
                          0xD1B54A32D192ED03ULL * (index + 1))) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform_pos() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

    /// Exponential waiting time; +inf when the rate is not positive.
    double exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(uniform_pos()) / rate;
    }

    /// Draw-free for the degenerate probabilities 0 and 1.
    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform_pos();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace dll
