#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cmath>
#include <vector>

#include "rhoplan/belief.hpp"
#include "rhoplan/model.hpp"

namespace rhoplan::testing {

// Straightforward transcription of the three-term entropy estimator, kept
// separate from the production evaluator on purpose.
inline double boers_reference(const WeightedParticleBelief& b, int action, Vec2 obs,
                              const ProblemModel& model) {
    const std::size_t n = b.count();
    double sp = 0.0, s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sp += b.particle(i).prior_weight;
        s += b.particle(i).weight;
    }
    double inner1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        inner1 += model.observation_density(obs, action, b.particle(i).state) *
                  (b.particle(i).prior_weight / sp);
    double term2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        term2 += (b.particle(i).weight / s) *
                 std::log(model.observation_density(obs, action, b.particle(i).state));
    double term3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ci = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            ci += model.transition_density(b.particle(i).state, b.particle(j).prior_state,
                                           action) *
                  (b.particle(j).prior_weight / sp);
        term3 += (b.particle(i).weight / s) * std::log(ci);
    }
    return std::log(inner1) - term2 - term3;
}

// Shannon entropy from an explicit weight list.
inline double shannon_reference(const std::vector<double>& weights) {
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    double h = 0.0;
    for (double w : weights) {
        const double u = w / wsum;
        h -= u * std::log(u);
    }
    return h;
}

}  // namespace rhoplan::testing
