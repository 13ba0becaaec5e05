#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rhoplan/belief.hpp"
#include "rhoplan/model.hpp"

namespace rhoplan {

struct Obstacle {
    Vec2 center;
    double radius = 0.0;
};

// Map geometry and episode parameters, loadable from JSON:
//   {beacons: [[x,y]...], obstacles: [{c:[x,y], r}...], goal: [x,y],
//    x0: [x,y], lambda, gamma, step_cap}
// The model definitions are fixed; the geometry is repo-defined data.
struct MapConfig {
    std::vector<Vec2> beacons;
    std::vector<Obstacle> obstacles;
    Vec2 goal{0.0, 0.0};
    Vec2 x0{0.0, 0.0};
    double lambda = 30.0;
    double gamma = 0.95;
    int step_cap = 50;

    static MapConfig from_json_text(const std::string& text);
    static MapConfig from_json_file(const std::string& path);
    std::string to_json_text() const;
};

// Euclidean-nearest beacon; ties resolve to the lowest beacon index.
struct NearestBeacon {
    std::size_t index = 0;
    double distance = 0.0;
};
NearestBeacon nearest_beacon(const std::vector<Vec2>& beacons, Vec2 position);

struct StepResult {
    Vec2 next_state;
    Vec2 observation;
    double reward = 0.0;
    bool terminal = false;
};

// Shared structure of the two benchmarks: R^2 states, the compass action set
// with a terminating "stay", linear-Gaussian transitions with covariance
// 0.1 I, and relative-pose observations from the nearest beacon with
//   Sigma_Z = (sqrt(2)/2) * dist(beacon, s') * I + Sigma_beacon,
// so accuracy improves with proximity. Derived classes fix Sigma_beacon and
// the reward structure.
class BeaconWorld : public ProblemModel {
public:
    explicit BeaconWorld(MapConfig map);

    double discount() const override { return map_.gamma; }
    double shaping_weight() const override { return map_.lambda; }
    int action_count() const override { return kCompassActionCount; }
    Vec2 action_delta(int action) const override { return compass_action_delta(action); }
    bool action_terminates(int action) const override { return action == kStayAction; }

    Vec2 transition_sample(Vec2 s, int action, Rng& rng) const override;
    double transition_density(Vec2 s_next, Vec2 s, int action) const override;
    Vec2 observation_sample(int action, Vec2 s_next, Rng& rng) const override;
    double observation_density(Vec2 o, int action, Vec2 s_next) const override;

    // Observation covariance at a given successor state.
    DiagCov2 observation_cov(Vec2 s_next) const;

    // Composes transition, nearest-beacon observation, reward and
    // termination for one environment step.
    StepResult step(Vec2 s, int action, Rng& rng) const;

    // n equally weighted samples from N(x0, 2.5 I).
    WeightedParticleBelief initial_belief(Rng& rng, int n_particles) const;

    // Closed-form differential entropy of the initial Gaussian belief.
    double initial_belief_entropy() const { return gaussian_entropy(initial_cov()); }

    static DiagCov2 initial_cov() { return DiagCov2::isotropic(2.5); }
    static DiagCov2 transition_cov() { return DiagCov2::isotropic(0.1); }

    const MapConfig& map() const { return map_; }

protected:
    virtual DiagCov2 beacon_noise(Vec2 beacon) const = 0;

    MapConfig map_;
};

// Goal-seeking benchmark: step cost -1, terminal +100 within a unit circle
// around the goal and -100 otherwise, beacon noise floor 0.5 I.
class LightDark2D : public BeaconWorld {
public:
    explicit LightDark2D(MapConfig map);

    double state_reward(Vec2 s, int action, Vec2 s_next) const override;
    double goal_radius() const { return 1.0; }

    // Informed rollout: head for the goal, stay once well inside it. Leaf
    // estimates from the uniform-random policy are so pessimistic about the
    // terminal bonus that they mask the value of refining the belief first.
    int rollout_action(Vec2 s, int remaining, int initial_depth, Rng& rng) const override;

    // Repo-default map: start at the origin under a diffuse belief, one
    // beacon off the straight line to the goal.
    static MapConfig default_map();

protected:
    DiagCov2 beacon_noise(Vec2) const override { return DiagCov2::isotropic(0.5); }
};

// Uncertainty-minimization benchmark: step cost -1, -50 on entering an
// obstacle disc (motion is not blocked), no goal bonus; beacons farther from
// the origin observe more accurately, Sigma_beacon = (0.5/||x_b||) I.
class ActiveLocalization : public BeaconWorld {
public:
    explicit ActiveLocalization(MapConfig map);

    double state_reward(Vec2 s, int action, Vec2 s_next) const override;
    bool obstacle_free() const { return map_.obstacles.empty(); }
    bool in_obstacle(Vec2 s) const;

    static MapConfig default_map();
    static MapConfig default_map_no_obstacles();

protected:
    DiagCov2 beacon_noise(Vec2 beacon) const override {
        return DiagCov2::isotropic(0.5 / norm(beacon));
    }
};

// Problem registry used by the experiment CLI and tests.
std::unique_ptr<BeaconWorld> make_benchmark(const std::string& problem_id);
std::unique_ptr<BeaconWorld> make_benchmark(const std::string& problem_id, const MapConfig& map);

}  // namespace rhoplan
