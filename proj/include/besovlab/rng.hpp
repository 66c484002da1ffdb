#pragma once

#include <cmath>
#include <cstdint>

namespace besovlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with counter-based stream derivation: worker streams are
/// seeded by splitmix64 over (seed, stream), so a fixed (seed, worker
/// count, partition) reproduces bit-identical output.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t sm = seed;
        (void)splitmix64(sm);
        sm ^= 0x517cc1b727220a95ULL * (stream + 1);
        for (auto& word : s_) word = splitmix64(sm);
    }

    using result_type = std::uint64_t;
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~0ULL; }

    std::uint64_t operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1); never returns 0.
    double uniform() {
        return (static_cast<double>(operator()() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Marsaglia polar, one value cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u, v, r2;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            r2 = u * u + v * v;
        } while (r2 >= 1.0 || r2 == 0.0);
        const double f = std::sqrt(-2.0 * std::log(r2) / r2);
        cached_ = v * f;
        has_cached_ = true;
        return u * f;
    }

    double exponential() { return -std::log(uniform()); }

    std::uint64_t poisson(double mean);

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4]{};
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// One-sided positive alpha-stable variate with Laplace transform
/// exp(-lambda^alpha), alpha in (0,1) (Kanter's representation).
double sample_positive_stable(double alpha, Xoshiro256& rng);

/// Standard symmetric alpha-stable variate with cf exp(-|u|^alpha),
/// alpha in (0,2) (Chambers-Mallows-Stuck).
double sample_sym_stable(double alpha, Xoshiro256& rng);

}  // namespace besovlab
