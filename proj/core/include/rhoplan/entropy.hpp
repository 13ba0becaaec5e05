#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "rhoplan/geometry.hpp"

namespace rhoplan {

class ProblemModel;
class WeightedParticleBelief;
struct InsertResult;

// Arguments of log() are clamped here so Gaussian tail underflow yields a
// large-but-finite value instead of -inf. Weights are clamped at the same
// floor before insertion (see WeightedParticleBelief::insert).
inline constexpr double kLogFloor = 1e-300;

/*
 * Per-observation-node cache for the Boers differential-entropy estimator
 *
 *   H(b') = log sum_i Z(o|a,s'_i) u_i
 *         - sum_i u'_i log Z(o|a,s'_i)
 *         - sum_i u'_i log c_i,        c_i = sum_j T(s'_i|s_j,a) u_j
 *
 * where u are the normalized prior-side weights and u' the normalized
 * posterior weights of the paired particle set. Appending a particle
 * rescales every cached c_i by old/new prior weight sum plus one additive
 * density term, computes the new particle's c from scratch (the only O(N)
 * part that touches densities twice), bumps the two running numerators, and
 * re-sums the third term. Total cost O(N) versus O(N^2) from scratch.
 *
 * A weight merge (bit-identical posterior state) is the same rescale with the
 * weight delta attributed to the stored pair, so cache and batch evaluation
 * agree after any insertion sequence.
 */
struct BoersCache {
    int action = -1;
    Vec2 obs;
    std::vector<double> c;  // c_i, normalized by the prior weight sum below
    std::vector<double> z;  // Z(o | action, s'_i), fixed per particle
    double prior_weight_sum = 0.0;
    double post_weight_sum = 0.0;
    double term1_num = 0.0;  // sum_i w_i  * z_i   (unnormalized prior weights)
    double term2_num = 0.0;  // sum_i w'_i * log z_i
    double value = 0.0;      // last H(b')
    std::size_t count = 0;   // particle count the cache is synced to
    std::uint64_t floor_events = 0;  // clamped log arguments seen so far
};

// Cached aggregates for particle-set Shannon entropy,
//   H(b) = -(1/W) sum_i w_i log w_i + log W,  W = sum_j w_j,
// updated in O(1) per weight change.
struct EntropyCache {
    double shannon_wlogw_sum = 0.0;  // sum_i w_i log w_i over unnormalized weights
    double shannon_value = 0.0;      // last H(b)
    std::unique_ptr<BoersCache> boers;

    EntropyCache() = default;
    EntropyCache(const EntropyCache& other);
    EntropyCache& operator=(const EntropyCache& other);
    EntropyCache(EntropyCache&&) noexcept = default;
    EntropyCache& operator=(EntropyCache&&) noexcept = default;
};

// Shannon entropy of the normalized weights, recomputed from scratch.
// Convention: 0 log 0 = 0.
double shannon_batch(const WeightedParticleBelief& belief);

// O(1) Shannon update after particle k's weight changed from w_k_old to
// w_k_new (w_k_old = 0 encodes a brand-new particle):
//   H <- (W/W~) H - (w~_k log w~_k - w_k log w_k)/W~ - log(W/W~).
// Updates the cache in place and returns the new entropy.
double shannon_update(EntropyCache& cache, double old_weight_sum, double new_weight_sum,
                      double w_k_old, double w_k_new);

// Boers estimator evaluated from scratch over the belief's paired particles.
// O(N^2) via the c_i double sum. `floor_events`, when given, receives the
// number of log arguments that hit the numerical floor.
double boers_batch(const WeightedParticleBelief& belief, int action, Vec2 obs,
                   const ProblemModel& model, std::uint64_t* floor_events = nullptr);

// Prepares an empty cache bound to a fixed (action, observation) context.
void boers_init(BoersCache& cache, int action, Vec2 obs);

// O(N) cache update after one insert() into the belief; `result` must be the
// InsertResult of that insertion and the cache must have been synced to the
// belief just before it. Returns the updated estimate.
double boers_update(BoersCache& cache, const WeightedParticleBelief& belief,
                    const InsertResult& result, int action, Vec2 obs,
                    const ProblemModel& model);

inline double info_gain(double h_prior, double h_post) { return h_prior - h_post; }

}  // namespace rhoplan
