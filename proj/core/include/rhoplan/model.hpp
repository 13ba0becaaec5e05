#pragma once

#include "rhoplan/geometry.hpp"
#include "rhoplan/rng.hpp"

namespace rhoplan {

// Reward of a belief transition, split into its two components. The total is
// maintained as the exact sum of the parts.
struct ShapedReward {
    double state_term = 0.0;
    double info_term = 0.0;
    double total = 0.0;

    static ShapedReward make(double state_term, double info_term) {
        return {state_term, info_term, state_term + info_term};
    }
};

// Generative contract for a belief-reward POMDP over R^2 states with a finite
// action set. Instances are immutable after construction and safe to share
// across threads; generators are always passed in, never stored.
//
// Densities must be strictly positive everywhere (the benchmark models are
// Gaussian), so particle weights never vanish identically.
class ProblemModel {
public:
    virtual ~ProblemModel() = default;

    virtual int state_dim() const { return 2; }

    // Discount factor, in (0, 1].
    virtual double discount() const = 0;

    // Weight of the information-gain term in the shaped reward (lambda).
    virtual double shaping_weight() const = 0;

    virtual int action_count() const = 0;

    // Mean displacement of the action.
    virtual Vec2 action_delta(int action) const = 0;

    // True for actions that end the episode when executed.
    virtual bool action_terminates(int action) const { (void)action; return false; }

    virtual Vec2 transition_sample(Vec2 s, int action, Rng& rng) const = 0;
    virtual double transition_density(Vec2 s_next, Vec2 s, int action) const = 0;

    virtual Vec2 observation_sample(int action, Vec2 s_next, Rng& rng) const = 0;
    virtual double observation_density(Vec2 o, int action, Vec2 s_next) const = 0;

    virtual double state_reward(Vec2 s, int action, Vec2 s_next) const = 0;

    // Action the default rollout policy takes from s with `remaining` depth
    // left. The base policy is uniform-random with terminating actions
    // excluded until the final third of the initial depth; problems may
    // override with an informed policy (still scored by state rewards only).
    virtual int rollout_action(Vec2 s, int remaining, int initial_depth, Rng& rng) const;
};

// The benchmark action set: eight unit-circle directions at 45 degree
// increments (indices 0..7, angle = index * pi/4) plus a terminating "stay"
// action at index 8.
inline constexpr int kStayAction = 8;
inline constexpr int kCompassActionCount = 9;

inline Vec2 compass_action_delta(int action) {
    static constexpr double kH = 0.70710678118654752440;  // sqrt(2)/2
    static constexpr double kDx[9] = {1.0, kH, 0.0, -kH, -1.0, -kH, 0.0, kH, 0.0};
    static constexpr double kDy[9] = {0.0, kH, 1.0, kH, 0.0, -kH, -1.0, -kH, 0.0};
    return {kDx[action], kDy[action]};
}

}  // namespace rhoplan
