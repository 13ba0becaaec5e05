#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rhoplan/entropy.hpp"
#include "rhoplan/geometry.hpp"
#include "rhoplan/model.hpp"
#include "rhoplan/rng.hpp"

namespace rhoplan {

// One posterior particle together with the prior particle that generated it
// and that prior particle's weight at insertion time. The pairing is what
// makes the matched prior/posterior sums of the Boers estimator O(1) to
// extend: both sides grow in lockstep.
struct Particle {
    Vec2 state;           // posterior state s'
    double weight;        // posterior weight w'
    Vec2 prior_state;     // generating prior state s
    double prior_weight;  // prior weight w at insertion time
};

// What a single insert() did, in the form the incremental caches need.
struct InsertResult {
    std::int32_t index = 0;  // particle touched (appended or merged into)
    bool merged = false;
    double weight_old = 0.0;  // posterior weight of the particle before (0 if new)
    double weight_new = 0.0;
    double weight_delta = 0.0;
    double prior_weight_delta = 0.0;
    double old_weight_sum = 0.0;
    double new_weight_sum = 0.0;
    double old_prior_weight_sum = 0.0;
    double new_prior_weight_sum = 0.0;
};

// Fenwick tree over particle weights; keeps weighted index sampling and
// in-place weight increases at O(log N).
class WeightSampler {
public:
    void push(double w);
    void add(std::size_t i, double delta);
    double total() const;
    std::size_t sample(double u01) const;  // u01 in [0,1)
    std::size_t size() const { return n_; }

private:
    std::vector<double> tree_;
    std::size_t n_ = 0;
};

// Growing weighted-particle belief with exact merge semantics and cached
// aggregates.
//
// Invariants: all weights strictly positive; weight_sum() tracks the true sum
// within 1e-12 relative (compensated summation); bit-identical posterior
// states are merged by adding weights, so the particle count never counts a
// state twice. Single-writer: a belief is owned by one planning tree and is
// mutated only by the planner thread.
class WeightedParticleBelief {
public:
    // Appends (or merges) a posterior particle. Weights below 1e-300 are
    // clamped so downstream logarithms stay finite; non-positive weights are
    // a contract violation. O(1) amortized plus the O(log N) sampler update.
    InsertResult insert(Vec2 state, double weight, Vec2 prior_state, double prior_weight);

    double normalized_weight(std::int32_t i) const;

    // Draws an index with probability proportional to its weight.
    std::int32_t sample_index(Rng& rng) const;

    // Weighted average of R_s over the stored (prior, posterior) pairs:
    // sum_i u'_i R_s(prior_i, action, state_i).
    double expected_state_reward(const ProblemModel& model, int action) const;

    std::size_t count() const { return particles_.size(); }
    bool empty() const { return particles_.empty(); }
    double weight_sum() const { return weight_sum_; }
    double prior_weight_sum() const { return prior_weight_sum_; }
    const Particle& particle(std::size_t i) const { return particles_[i]; }
    const std::vector<Particle>& particles() const { return particles_; }

    const EntropyCache& entropy() const { return entropy_; }
    EntropyCache& entropy() { return entropy_; }
    double shannon() const { return entropy_.shannon_value; }

    // Particle records as a JSON array, for trace output.
    std::string to_json() const;

private:
    std::vector<Particle> particles_;
    double weight_sum_ = 0.0;
    double weight_sum_comp_ = 0.0;  // Kahan compensation
    double prior_weight_sum_ = 0.0;
    double prior_weight_sum_comp_ = 0.0;
    EntropyCache entropy_;
    WeightSampler sampler_;
    std::unordered_map<StateKey, std::int32_t, StateKeyHash> index_;
};

}  // namespace rhoplan
