#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rhoplan {

// splitmix64, used to derive independent seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed-splitting rule: every experiment stream is identified by a master
// seed plus a small tuple of stream indices. The derivation is pure, so any
// episode/step stream can be reconstructed without running its predecessors.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master ^ (0xA076'1D64'78BD'642FULL * (a + 1)));
    s = splitmix64(s ^ (0xE703'7ED1'A0B4'28DBULL * (b + 1)));
    return splitmix64(s ^ (0x8EBC'6AF0'9C88'C6E3ULL * (c + 1)));
}

// Explicitly seeded generator. All randomness in the library flows through
// one of these; there is no hidden global state. Normal variates use
// Box-Muller on top of the raw 64-bit stream so results do not depend on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        int k = static_cast<int>(uniform01() * n);
        return k >= n ? n - 1 : k;
    }

    // Standard normal. Consumes exactly two uniforms.
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // Pair of independent standard normals from one Box-Muller transform.
    void normal_pair(double& z0, double& z1) {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925287 * u2;
        z0 = r * std::cos(t);
        z1 = r * std::sin(t);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace rhoplan
