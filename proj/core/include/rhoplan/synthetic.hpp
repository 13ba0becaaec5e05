#pragma once

#include "rhoplan/belief.hpp"
#include "rhoplan/model.hpp"

namespace rhoplan {

// Small fully-specified problems used by sanity tests and the
// visitation-bound experiment.

// One non-terminating action, constant reward, mild Gaussian noise.
class SingleActionProblem : public ProblemModel {
public:
    double discount() const override { return 0.95; }
    double shaping_weight() const override { return 0.0; }
    int action_count() const override { return 1; }
    Vec2 action_delta(int) const override { return {1.0, 0.0}; }

    Vec2 transition_sample(Vec2 s, int a, Rng& rng) const override {
        return gaussian_sample(s + action_delta(a), DiagCov2::isotropic(0.1), rng);
    }
    double transition_density(Vec2 s_next, Vec2 s, int a) const override {
        return gaussian_pdf(s_next, s + action_delta(a), DiagCov2::isotropic(0.1));
    }
    Vec2 observation_sample(int, Vec2 s_next, Rng& rng) const override {
        return gaussian_sample(s_next, DiagCov2::isotropic(1.0), rng);
    }
    double observation_density(Vec2 o, int, Vec2 s_next) const override {
        return gaussian_pdf(o, s_next, DiagCov2::isotropic(1.0));
    }
    double state_reward(Vec2, int, Vec2) const override { return -1.0; }
};

// Two-armed bandit: arm 0 pays +1, arm 1 pays 0. Deterministic transitions
// keep particle merging on the hot path.
class BanditProblem : public ProblemModel {
public:
    double discount() const override { return 1.0; }
    double shaping_weight() const override { return 0.0; }
    int action_count() const override { return 2; }
    Vec2 action_delta(int a) const override { return {static_cast<double>(a + 1), 0.0}; }

    Vec2 transition_sample(Vec2 s, int a, Rng&) const override { return s + action_delta(a); }
    double transition_density(Vec2 s_next, Vec2 s, int a) const override {
        return gaussian_pdf(s_next, s + action_delta(a), DiagCov2::isotropic(0.01));
    }
    Vec2 observation_sample(int, Vec2, Rng&) const override { return {0.0, 0.0}; }
    double observation_density(Vec2 o, int, Vec2) const override {
        return gaussian_pdf(o, {0.0, 0.0}, DiagCov2::isotropic(1.0));
    }
    double state_reward(Vec2, int a, Vec2) const override { return a == 0 ? 1.0 : 0.0; }
};

// Single forced action down a corridor at -1 per step, discount 1. A depth-d
// rollout from here is exactly -d.
class CorridorProblem : public ProblemModel {
public:
    double discount() const override { return 1.0; }
    double shaping_weight() const override { return 0.0; }
    int action_count() const override { return 1; }
    Vec2 action_delta(int) const override { return {1.0, 0.0}; }

    Vec2 transition_sample(Vec2 s, int a, Rng&) const override { return s + action_delta(a); }
    double transition_density(Vec2 s_next, Vec2 s, int a) const override {
        return gaussian_pdf(s_next, s + action_delta(a), DiagCov2::isotropic(0.01));
    }
    Vec2 observation_sample(int, Vec2, Rng&) const override { return {0.0, 0.0}; }
    double observation_density(Vec2 o, int, Vec2) const override {
        return gaussian_pdf(o, {0.0, 0.0}, DiagCov2::isotropic(1.0));
    }
    double state_reward(Vec2, int, Vec2) const override { return -1.0; }
};

// Three actions, continuous observations, rewards in [0, 1]; used with the
// consistent selection strategies for the visitation-bound experiment, whose
// guarantees assume bounded rewards.
class InfoToyProblem : public ProblemModel {
public:
    double discount() const override { return 0.95; }
    double shaping_weight() const override { return 0.0; }
    int action_count() const override { return 3; }
    Vec2 action_delta(int a) const override {
        switch (a) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            default: return {-1.0, 0.0};
        }
    }

    Vec2 transition_sample(Vec2 s, int a, Rng& rng) const override {
        return gaussian_sample(s + action_delta(a), DiagCov2::isotropic(0.1), rng);
    }
    double transition_density(Vec2 s_next, Vec2 s, int a) const override {
        return gaussian_pdf(s_next, s + action_delta(a), DiagCov2::isotropic(0.1));
    }
    Vec2 observation_sample(int, Vec2 s_next, Rng& rng) const override {
        return gaussian_sample(s_next, DiagCov2::isotropic(0.25), rng);
    }
    double observation_density(Vec2 o, int, Vec2 s_next) const override {
        return gaussian_pdf(o, s_next, DiagCov2::isotropic(0.25));
    }
    double state_reward(Vec2, int, Vec2 s_next) const override {
        return std::exp(-0.5 * squared_norm(s_next - Vec2{1.0, 0.0}));
    }
};

// n equally weighted copies of a point state; convenient root belief for the
// synthetic problems.
inline WeightedParticleBelief point_belief(Vec2 s, int n = 1) {
    WeightedParticleBelief b;
    for (int i = 0; i < n; ++i) b.insert(s, 1.0, s, 1.0);
    return b;
}

}  // namespace rhoplan
