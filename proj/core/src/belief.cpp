#include "rhoplan/belief.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace rhoplan {

namespace {

constexpr double kWeightFloor = 1e-300;

// Compensated accumulation: sum += v with carried correction.
inline void kahan_add(double& sum, double& comp, double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

}  // namespace

void WeightSampler::push(double w) {
    // A fresh Fenwick node covers (k - lowbit(k), k]; seed it with the sums
    // of the sub-nodes already holding that range.
    ++n_;
    const std::size_t k = n_;
    const std::size_t low = k & (~k + 1);
    double v = w;
    for (std::size_t j = k - 1; j > k - low; j -= j & (~j + 1)) v += tree_[j - 1];
    tree_.push_back(v);
}

void WeightSampler::add(std::size_t i, double delta) {
    for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k - 1] += delta;
}

double WeightSampler::total() const {
    double t = 0.0;
    for (std::size_t k = n_; k > 0; k -= k & (~k + 1)) t += tree_[k - 1];
    return t;
}

std::size_t WeightSampler::sample(double u01) const {
    double target = u01 * total();
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 <= n_) step *= 2;
    for (; step > 0; step /= 2) {
        const std::size_t next = pos + step;
        if (next <= n_ && tree_[next - 1] < target) {
            target -= tree_[next - 1];
            pos = next;
        }
    }
    return pos < n_ ? pos : n_ - 1;
}

InsertResult WeightedParticleBelief::insert(Vec2 state, double weight, Vec2 prior_state,
                                            double prior_weight) {
    if (!(weight > 0.0) || !(prior_weight > 0.0))
        throw std::invalid_argument("belief: particle weights must be positive");
    const double w = std::max(weight, kWeightFloor);
    const double pw = std::max(prior_weight, kWeightFloor);

    InsertResult res;
    res.old_weight_sum = weight_sum_;
    res.old_prior_weight_sum = prior_weight_sum_;

    const StateKey key = state_key(state);
    auto it = index_.find(key);
    if (it != index_.end()) {
        Particle& p = particles_[it->second];
        res.index = it->second;
        res.merged = true;
        res.weight_old = p.weight;
        p.weight += w;
        p.prior_weight += pw;
        res.weight_new = p.weight;
        sampler_.add(static_cast<std::size_t>(res.index), w);
    } else {
        res.index = static_cast<std::int32_t>(particles_.size());
        res.merged = false;
        res.weight_old = 0.0;
        res.weight_new = w;
        particles_.push_back({state, w, prior_state, pw});
        index_.emplace(key, res.index);
        sampler_.push(w);
    }

    kahan_add(weight_sum_, weight_sum_comp_, w);
    kahan_add(prior_weight_sum_, prior_weight_sum_comp_, pw);
    res.weight_delta = w;
    res.prior_weight_delta = pw;
    res.new_weight_sum = weight_sum_;
    res.new_prior_weight_sum = prior_weight_sum_;

    shannon_update(entropy_, res.old_weight_sum, res.new_weight_sum, res.weight_old,
                   res.weight_new);
    return res;
}

double WeightedParticleBelief::normalized_weight(std::int32_t i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= particles_.size())
        throw std::out_of_range("belief: particle index out of range");
    return particles_[static_cast<std::size_t>(i)].weight / weight_sum_;
}

std::int32_t WeightedParticleBelief::sample_index(Rng& rng) const {
    if (particles_.empty()) throw std::logic_error("belief: cannot sample from empty belief");
    return static_cast<std::int32_t>(sampler_.sample(rng.uniform01()));
}

double WeightedParticleBelief::expected_state_reward(const ProblemModel& model,
                                                     int action) const {
    double num = 0.0;
    for (const Particle& p : particles_)
        num += p.weight * model.state_reward(p.prior_state, action, p.state);
    return num / weight_sum_;
}

std::string WeightedParticleBelief::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Particle& p : particles_) {
        arr.push_back({{"state", {p.state.x, p.state.y}},
                       {"weight", p.weight},
                       {"prior_state", {p.prior_state.x, p.prior_state.y}},
                       {"prior_weight", p.prior_weight}});
    }
    return arr.dump();
}

}  // namespace rhoplan
