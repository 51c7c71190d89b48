#pragma once

// Seeded randomness helpers. Bounded draws use rejection sampling on raw
// mt19937_64 output so streams are identical across standard libraries
// (std::uniform_int_distribution is implementation-defined).

#include <cmath>
#include <cstdint>
#include <random>

#include "cubiclin/linalg.hpp"

namespace cubiclin {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive.
    long long int_in(long long lo, long long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return lo + static_cast<long long>(r % span);
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double gaussian() {
        double u1 = unit(), u2 = unit();
        while (u1 <= 0.0) u1 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    FloatVec unit_sphere(std::size_t n) {
        FloatVec v;
        v.coords.resize(n);
        double s = 0;
        do {
            s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                v.coords[i] = gaussian();
                s += v.coords[i] * v.coords[i];
            }
        } while (s == 0.0);
        double inv = 1.0 / std::sqrt(s);
        for (double& c : v.coords) c *= inv;
        return v;
    }

    // Rational with |numerator| <= num_bound and denominator in [1, den_bound].
    Rat rational(long num_bound, long den_bound) {
        long long n = int_in(-num_bound, num_bound);
        long long d = int_in(1, den_bound);
        return make_rat(static_cast<long>(n), static_cast<long>(d));
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        // splitmix64 finalizer over a simple combine
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cubiclin
