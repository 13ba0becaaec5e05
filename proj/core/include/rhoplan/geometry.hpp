#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#include "rhoplan/rng.hpp"

namespace rhoplan {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }
inline double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Bitwise state identity, used for exact particle merging.
struct StateKey {
    std::uint64_t x, y;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

inline StateKey state_key(Vec2 v) {
    return {std::bit_cast<std::uint64_t>(v.x), std::bit_cast<std::uint64_t>(v.y)};
}

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        return static_cast<std::size_t>(splitmix64(k.x ^ splitmix64(k.y)));
    }
};

// Diagonal 2x2 covariance. All covariances in the benchmark models are
// isotropic or diagonal, so this avoids a general matrix dependency.
struct DiagCov2 {
    double xx = 1.0;
    double yy = 1.0;

    static DiagCov2 isotropic(double v) { return {v, v}; }
    double trace() const { return xx + yy; }
    friend DiagCov2 operator+(DiagCov2 a, DiagCov2 b) { return {a.xx + b.xx, a.yy + b.yy}; }
};

inline constexpr double kTwoPi = 6.283185307179586476925287;

inline double gaussian_pdf(Vec2 x, Vec2 mean, DiagCov2 cov) {
    const double dx = x.x - mean.x;
    const double dy = x.y - mean.y;
    const double q = dx * dx / cov.xx + dy * dy / cov.yy;
    return std::exp(-0.5 * q) / (kTwoPi * std::sqrt(cov.xx * cov.yy));
}

inline double gaussian_log_pdf(Vec2 x, Vec2 mean, DiagCov2 cov) {
    const double dx = x.x - mean.x;
    const double dy = x.y - mean.y;
    const double q = dx * dx / cov.xx + dy * dy / cov.yy;
    return -0.5 * q - std::log(kTwoPi) - 0.5 * std::log(cov.xx * cov.yy);
}

inline Vec2 gaussian_sample(Vec2 mean, DiagCov2 cov, Rng& rng) {
    double z0, z1;
    rng.normal_pair(z0, z1);
    return {mean.x + std::sqrt(cov.xx) * z0, mean.y + std::sqrt(cov.yy) * z1};
}

// Differential entropy of a diagonal-covariance 2D Gaussian, in nats.
inline double gaussian_entropy(DiagCov2 cov) {
    return 1.0 + std::log(kTwoPi) + 0.5 * std::log(cov.xx * cov.yy);
}

}  // namespace rhoplan
