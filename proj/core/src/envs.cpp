#include "rhoplan/envs.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rhoplan {

namespace {

Vec2 vec_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

MapConfig MapConfig::from_json_text(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    MapConfig m;
    for (const auto& b : j.at("beacons")) m.beacons.push_back(vec_from(b));
    if (j.contains("obstacles"))
        for (const auto& o : j.at("obstacles"))
            m.obstacles.push_back({vec_from(o.at("c")), o.at("r").get<double>()});
    if (j.contains("goal")) m.goal = vec_from(j.at("goal"));
    if (j.contains("x0")) m.x0 = vec_from(j.at("x0"));
    if (j.contains("lambda")) m.lambda = j.at("lambda").get<double>();
    if (j.contains("gamma")) m.gamma = j.at("gamma").get<double>();
    if (j.contains("step_cap")) m.step_cap = j.at("step_cap").get<int>();
    if (m.beacons.empty()) throw std::invalid_argument("map: at least one beacon is required");
    if (!(m.gamma > 0.0 && m.gamma <= 1.0))
        throw std::invalid_argument("map: gamma must lie in (0,1]");
    if (m.lambda < 0.0) throw std::invalid_argument("map: lambda must be non-negative");
    return m;
}

MapConfig MapConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("map: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string MapConfig::to_json_text() const {
    nlohmann::json j;
    j["beacons"] = nlohmann::json::array();
    for (const Vec2& b : beacons) j["beacons"].push_back({b.x, b.y});
    j["obstacles"] = nlohmann::json::array();
    for (const Obstacle& o : obstacles)
        j["obstacles"].push_back({{"c", {o.center.x, o.center.y}}, {"r", o.radius}});
    j["goal"] = {goal.x, goal.y};
    j["x0"] = {x0.x, x0.y};
    j["lambda"] = lambda;
    j["gamma"] = gamma;
    j["step_cap"] = step_cap;
    return j.dump(2);
}

NearestBeacon nearest_beacon(const std::vector<Vec2>& beacons, Vec2 position) {
    if (beacons.empty()) throw std::logic_error("nearest_beacon: no beacons");
    NearestBeacon best{0, distance(beacons[0], position)};
    for (std::size_t i = 1; i < beacons.size(); ++i) {
        const double d = distance(beacons[i], position);
        if (d < best.distance) best = {i, d};
    }
    return best;
}

BeaconWorld::BeaconWorld(MapConfig map) : map_(std::move(map)) {
    if (map_.beacons.empty()) throw std::invalid_argument("beacon world: no beacons");
}

Vec2 BeaconWorld::transition_sample(Vec2 s, int action, Rng& rng) const {
    return gaussian_sample(s + action_delta(action), transition_cov(), rng);
}

double BeaconWorld::transition_density(Vec2 s_next, Vec2 s, int action) const {
    return gaussian_pdf(s_next, s + action_delta(action), transition_cov());
}

DiagCov2 BeaconWorld::observation_cov(Vec2 s_next) const {
    const NearestBeacon nb = nearest_beacon(map_.beacons, s_next);
    const double spread = 0.70710678118654752440 * nb.distance;
    return DiagCov2::isotropic(spread) + beacon_noise(map_.beacons[nb.index]);
}

Vec2 BeaconWorld::observation_sample(int /*action*/, Vec2 s_next, Rng& rng) const {
    const NearestBeacon nb = nearest_beacon(map_.beacons, s_next);
    return gaussian_sample(map_.beacons[nb.index] - s_next, observation_cov(s_next), rng);
}

double BeaconWorld::observation_density(Vec2 o, int /*action*/, Vec2 s_next) const {
    const NearestBeacon nb = nearest_beacon(map_.beacons, s_next);
    return gaussian_pdf(o, map_.beacons[nb.index] - s_next, observation_cov(s_next));
}

StepResult BeaconWorld::step(Vec2 s, int action, Rng& rng) const {
    StepResult r;
    r.next_state = transition_sample(s, action, rng);
    r.observation = observation_sample(action, r.next_state, rng);
    r.reward = state_reward(s, action, r.next_state);
    r.terminal = action_terminates(action);
    return r;
}

WeightedParticleBelief BeaconWorld::initial_belief(Rng& rng, int n_particles) const {
    if (n_particles < 1) throw std::invalid_argument("initial_belief: need n >= 1");
    WeightedParticleBelief b;
    for (int i = 0; i < n_particles; ++i) {
        const Vec2 s = gaussian_sample(map_.x0, initial_cov(), rng);
        b.insert(s, 1.0, s, 1.0);
    }
    return b;
}

LightDark2D::LightDark2D(MapConfig map) : BeaconWorld(std::move(map)) {}

double LightDark2D::state_reward(Vec2 /*s*/, int action, Vec2 s_next) const {
    double r = -1.0;
    if (action == kStayAction)
        r += distance(s_next, map_.goal) <= goal_radius() ? 100.0 : -100.0;
    return r;
}

int LightDark2D::rollout_action(Vec2 s, int remaining, int initial_depth,
                                Rng& /*rng*/) const {
    const Vec2 to_goal = map_.goal - s;
    // Stay keeps the final-third gate of the default policy; a rollout that
    // stays whenever its (fully observed) state is in the goal prices the
    // terminal decision as if the position were known and drowns out the
    // value of tightening the belief first.
    const bool stay_window = remaining <= std::max(1, initial_depth / 3);
    if (stay_window && norm(to_goal) <= 0.6 * goal_radius()) return kStayAction;
    const double angle = std::atan2(to_goal.y, to_goal.x);
    int k = static_cast<int>(std::lround(angle / (kTwoPi / 8.0)));
    if (k < 0) k += 8;
    return k % 8;
}

MapConfig LightDark2D::default_map() {
    MapConfig m;
    m.beacons = {{5.0, 0.3}};
    m.goal = {5.0, 0.0};
    m.x0 = {0.0, 0.0};
    m.lambda = 30.0;
    m.gamma = 0.95;
    m.step_cap = 50;
    return m;
}

ActiveLocalization::ActiveLocalization(MapConfig map) : BeaconWorld(std::move(map)) {
    for (const Vec2& b : map_.beacons)
        if (!(norm(b) > 0.0))
            throw std::invalid_argument("active localization: beacons must satisfy ||x_b|| > 0");
}

bool ActiveLocalization::in_obstacle(Vec2 s) const {
    for (const Obstacle& o : map_.obstacles)
        if (distance(s, o.center) <= o.radius) return true;
    return false;
}

double ActiveLocalization::state_reward(Vec2 /*s*/, int /*action*/, Vec2 s_next) const {
    double r = -1.0;
    if (in_obstacle(s_next)) r -= 50.0;
    return r;
}

MapConfig ActiveLocalization::default_map() {
    MapConfig m;
    m.beacons = {{1.5, 1.5}, {6.0, 6.0}};
    m.obstacles = {{{3.3, 3.3}, 1.0}};
    m.goal = {0.0, 0.0};  // unused
    m.x0 = {0.0, 0.0};
    m.lambda = 30.0;
    m.gamma = 0.95;
    m.step_cap = 50;
    return m;
}

MapConfig ActiveLocalization::default_map_no_obstacles() {
    MapConfig m = default_map();
    m.obstacles.clear();
    return m;
}

std::unique_ptr<BeaconWorld> make_benchmark(const std::string& problem_id) {
    if (problem_id == "lightdark2d") return std::make_unique<LightDark2D>(LightDark2D::default_map());
    if (problem_id == "active_localization")
        return std::make_unique<ActiveLocalization>(ActiveLocalization::default_map());
    if (problem_id == "active_localization_noobs")
        return std::make_unique<ActiveLocalization>(ActiveLocalization::default_map_no_obstacles());
    throw std::invalid_argument("unknown problem id: " + problem_id);
}

std::unique_ptr<BeaconWorld> make_benchmark(const std::string& problem_id, const MapConfig& map) {
    if (problem_id == "lightdark2d") return std::make_unique<LightDark2D>(map);
    if (problem_id == "active_localization" || problem_id == "active_localization_noobs")
        return std::make_unique<ActiveLocalization>(map);
    throw std::invalid_argument("unknown problem id: " + problem_id);
}

}  // namespace rhoplan
