#include "rhoplan/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "rhoplan/belief.hpp"
#include "rhoplan/model.hpp"

namespace rhoplan {

namespace {

inline double floored_log(double x, std::uint64_t* floor_events) {
    if (x < kLogFloor) {
        if (floor_events) ++*floor_events;
        x = kLogFloor;
    }
    return std::log(x);
}

}  // namespace

EntropyCache::EntropyCache(const EntropyCache& other)
    : shannon_wlogw_sum(other.shannon_wlogw_sum), shannon_value(other.shannon_value) {
    if (other.boers) boers = std::make_unique<BoersCache>(*other.boers);
}

EntropyCache& EntropyCache::operator=(const EntropyCache& other) {
    if (this == &other) return *this;
    shannon_wlogw_sum = other.shannon_wlogw_sum;
    shannon_value = other.shannon_value;
    boers = other.boers ? std::make_unique<BoersCache>(*other.boers) : nullptr;
    return *this;
}

double shannon_batch(const WeightedParticleBelief& belief) {
    if (belief.empty()) throw std::logic_error("shannon_batch: empty belief");
    const double wsum = belief.weight_sum();
    double h = 0.0;
    for (const Particle& p : belief.particles()) {
        const double u = p.weight / wsum;
        if (u > 0.0) h -= u * std::log(u);
    }
    return h;
}

double shannon_update(EntropyCache& cache, double old_weight_sum, double new_weight_sum,
                      double w_k_old, double w_k_new) {
    if (!(new_weight_sum > 0.0))
        throw std::invalid_argument("shannon_update: non-positive weight sum");
    const double old_term = w_k_old > 0.0 ? w_k_old * std::log(w_k_old) : 0.0;
    const double new_term = w_k_new * std::log(w_k_new);
    cache.shannon_wlogw_sum += new_term - old_term;
    if (old_weight_sum <= 0.0) {
        // First particle: entropy from the factorized form directly.
        cache.shannon_value =
            -cache.shannon_wlogw_sum / new_weight_sum + std::log(new_weight_sum);
        return cache.shannon_value;
    }
    // H~ = (W/W~)(H - log W) - (w~_k log w~_k - w_k log w_k)/W~ + log W~.
    // Rescales the cached entropy and folds in the one changed w log w term.
    const double ratio = old_weight_sum / new_weight_sum;
    cache.shannon_value = ratio * (cache.shannon_value - std::log(old_weight_sum)) -
                          (new_term - old_term) / new_weight_sum + std::log(new_weight_sum);
    return cache.shannon_value;
}

double boers_batch(const WeightedParticleBelief& belief, int action, Vec2 obs,
                   const ProblemModel& model, std::uint64_t* floor_events) {
    const std::size_t n = belief.count();
    if (n == 0) throw std::logic_error("boers_batch: empty belief");
    const double s_prior = belief.prior_weight_sum();
    const double s_post = belief.weight_sum();

    double term1_num = 0.0;
    double term2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Particle& p = belief.particle(i);
        const double z = model.observation_density(obs, action, p.state);
        term1_num += p.prior_weight * z;
        term2 += (p.weight / s_post) * floored_log(z, floor_events);
    }

    double term3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Particle& pi = belief.particle(i);
        double ci = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const Particle& pj = belief.particle(j);
            ci += model.transition_density(pi.state, pj.prior_state, action) * pj.prior_weight;
        }
        ci /= s_prior;
        term3 += (pi.weight / s_post) * floored_log(ci, floor_events);
    }

    return floored_log(term1_num / s_prior, floor_events) - term2 - term3;
}

void boers_init(BoersCache& cache, int action, Vec2 obs) {
    cache = BoersCache{};
    cache.action = action;
    cache.obs = obs;
}

double boers_update(BoersCache& cache, const WeightedParticleBelief& belief,
                    const InsertResult& result, int action, Vec2 obs,
                    const ProblemModel& model) {
    if (cache.action != action || !(cache.obs == obs))
        throw std::logic_error("boers_update: cache bound to a different (action, observation)");
    const std::size_t expected = result.merged ? belief.count() : belief.count() - 1;
    if (cache.count != expected)
        throw std::logic_error("boers_update: cache desynchronized from belief");

    const Particle& pk = belief.particle(static_cast<std::size_t>(result.index));
    const double s_prior_new = result.new_prior_weight_sum;
    const double scale = result.old_prior_weight_sum / s_prior_new;
    const double dp = result.prior_weight_delta / s_prior_new;

    // Rescale every cached c_i and add the new prior mass term. The delta is
    // attributed to the stored pair's prior state, which for a merge is the
    // pair that already holds index k.
    const std::size_t n_old = cache.c.size();
    for (std::size_t i = 0; i < n_old; ++i) {
        const Particle& pi = belief.particle(i);
        cache.c[i] = cache.c[i] * scale +
                     model.transition_density(pi.state, pk.prior_state, action) * dp;
    }

    double z_k;
    if (result.merged) {
        z_k = cache.z[static_cast<std::size_t>(result.index)];
    } else {
        z_k = model.observation_density(obs, action, pk.state);
        cache.z.push_back(z_k);
        // c for the appended particle, from scratch over the full prior side.
        double c_new = 0.0;
        for (std::size_t j = 0; j < belief.count(); ++j) {
            const Particle& pj = belief.particle(j);
            c_new += model.transition_density(pk.state, pj.prior_state, action) * pj.prior_weight;
        }
        cache.c.push_back(c_new / s_prior_new);
    }

    cache.term1_num += result.prior_weight_delta * z_k;
    cache.term2_num += result.weight_delta * floored_log(z_k, &cache.floor_events);
    cache.prior_weight_sum = s_prior_new;
    cache.post_weight_sum = result.new_weight_sum;
    cache.count = belief.count();

    // Term 3 is re-summed: every c_i changed, and a second-order cache would
    // accumulate error.
    double term3 = 0.0;
    for (std::size_t i = 0; i < cache.c.size(); ++i)
        term3 += belief.particle(i).weight * floored_log(cache.c[i], &cache.floor_events);
    term3 /= cache.post_weight_sum;

    cache.value = floored_log(cache.term1_num / s_prior_new, &cache.floor_events) -
                  cache.term2_num / cache.post_weight_sum - term3;
    return cache.value;
}

}  // namespace rhoplan
