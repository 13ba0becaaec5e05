#include "rhoplan/select.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhoplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Next untried action, assuming actions are expanded in index order.
int next_untried_action(const BeliefNode& node) {
    return static_cast<int>(node.children.size());
}

std::int32_t argmax_child(const BeliefTree& tree, const BeliefNode& node,
                          double (*score)(const ActionNode&, double, double), double n_h,
                          double bonus_scale) {
    std::int32_t best = -1;
    double best_score = -kInf;
    for (std::int32_t ha : node.children) {
        const ActionNode& a = tree.action(ha);
        const double s = a.visits == 0 ? kInf : score(a, n_h, bonus_scale);
        if (s > best_score) {
            best_score = s;
            best = ha;
        }
    }
    return best;
}

double ucb_score(const ActionNode& a, double n_h, double c) {
    return a.q + c * std::sqrt(std::log(n_h) / static_cast<double>(a.visits));
}

double auger_score(const ActionNode& a, double n_h_pow_e, double /*unused*/) {
    return a.q + std::sqrt(n_h_pow_e / static_cast<double>(a.visits));
}

// Expansion predicate of the consistent strategies: fires exactly when the
// floored power increments, i.e. floor(v^alpha) > floor((v-1)^alpha).
bool floor_power_increments(std::int64_t v, double alpha) {
    return std::floor(std::pow(static_cast<double>(v), alpha)) >
           std::floor(std::pow(static_cast<double>(v - 1), alpha));
}

}  // namespace

ActionSelect dpw_action_select(BeliefTree& tree, std::int32_t h, const DpwParams& params,
                               const ProblemModel& model) {
    BeliefNode& node = tree.node(h);
    if (model.action_count() == 0) throw std::logic_error("dpw_action_select: empty action set");
    const double cap =
        params.k_a * std::pow(static_cast<double>(node.visits), params.alpha_a);
    const bool untried = static_cast<int>(node.children.size()) < model.action_count();
    if (untried && static_cast<double>(node.children.size()) <= cap) {
        const int a = next_untried_action(node);
        return {tree.add_action_child(h, a), true};
    }
    return {argmax_child(tree, node, ucb_score, static_cast<double>(node.visits), params.c),
            false};
}

ActionSelect auger_action_select(BeliefTree& tree, std::int32_t h, const AugerParams& params,
                                 const ProblemModel& model, int depth) {
    BeliefNode& node = tree.node(h);
    const bool untried = static_cast<int>(node.children.size()) < model.action_count();
    if (untried && floor_power_increments(node.visits, params.alpha_a)) {
        const int a = next_untried_action(node);
        return {tree.add_action_child(h, a), true};
    }
    const double n_pow_e =
        std::pow(static_cast<double>(node.visits), params.e_at(depth));
    return {argmax_child(tree, node, auger_score, n_pow_e, 0.0), false};
}

ObsSelect dpw_observation_select(BeliefTree& tree, std::int32_t ha, const DpwParams& params,
                                 const ProblemModel& model, Vec2 s_next, Rng& rng) {
    ActionNode& a = tree.action(ha);
    const double cap = params.k_o * std::pow(static_cast<double>(a.visits), params.alpha_o);
    if (static_cast<double>(a.branches.size()) <= cap) {
        return {-1, true, model.observation_sample(a.action, s_next, rng)};
    }
    // Revisit an existing branch, proposal-count weighted. Continuous
    // observations make every proposal a fresh child, so the counts stay at
    // one and this reduces to a uniform draw.
    std::int64_t total = 0;
    for (const ObsBranch& b : a.branches) total += b.gen_count;
    std::int64_t pick = static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(total));
    if (pick >= total) pick = total - 1;
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
        pick -= a.branches[i].gen_count;
        if (pick < 0)
            return {static_cast<std::int32_t>(i), false, tree.node(a.branches[i].node).obs};
    }
    return {static_cast<std::int32_t>(a.branches.size()) - 1, false,
            tree.node(a.branches.back().node).obs};
}

ObsSelect auger_observation_select(BeliefTree& tree, std::int32_t ha, const AugerParams& params,
                                   const ProblemModel& model, Vec2 s_next, Rng& rng) {
    ActionNode& a = tree.action(ha);
    if (floor_power_increments(a.visits + 1, params.alpha_o)) {
        return {-1, true, model.observation_sample(a.action, s_next, rng)};
    }
    std::int32_t best = -1;
    std::int64_t best_visits = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
        if (a.branches[i].visits < best_visits) {
            best_visits = a.branches[i].visits;
            best = static_cast<std::int32_t>(i);
        }
    }
    return {best, false, tree.node(a.branches[best].node).obs};
}

double auger_f(double i, double alpha_a) {
    return std::pow(i, 1.0 / (alpha_a * (1.0 - alpha_a)));
}

double auger_g(double j, double alpha_o) {
    return std::ceil(std::pow(j + 1.0, 1.0 / alpha_o));
}

double auger_F(double n, double alpha_a, double e) {
    return 0.25 * std::pow(n, e * (1.0 - alpha_a));
}

double auger_G(double n, double alpha_o) {
    return n / std::pow(std::floor(n), alpha_o) - 1.0;
}

BoundValue consistency_bound(int tau, double t, const ConsistencyParams& params) {
    double v = t;
    for (int layer = 0; layer < tau; ++layer) {
        v = auger_F(v, params.alpha_a, params.e);
        const double fv = std::floor(v);
        if (fv < 1.0) return {0.0, true};
        v = auger_G(fv, params.alpha_o);
    }
    return {v, v < 1.0};
}

BoundValue consistency_bound_action(int tau, double t, const ConsistencyParams& params) {
    BoundValue inner = consistency_bound(tau - 1, t, params);
    if (tau >= 2 && inner.vacuous && inner.value <= 0.0) return {0.0, true};
    const double v = auger_F(inner.value, params.alpha_a, params.e);
    return {v, v < 1.0};
}

namespace {

// Monotone minorant of K_tau: G is replaced by n^(1-alpha_o) - 1, which is
// never above the floored form, so thresholds derived from it are safe
// over-estimates.
double bound_minorant(int tau, bool action_suffix, double t, const ConsistencyParams& p) {
    double v = t;
    const int full_layers = action_suffix ? tau - 1 : tau;
    for (int layer = 0; layer < full_layers; ++layer) {
        v = auger_F(v, p.alpha_a, p.e);
        if (v < 1.0) return -kInf;
        v = std::pow(v, 1.0 - p.alpha_o) - 1.0;
        if (v <= 0.0 && layer + 1 < full_layers) return -kInf;
    }
    if (action_suffix) {
        if (v < 0.0) return -kInf;
        v = auger_F(v, p.alpha_a, p.e);
    }
    return v;
}

// Smallest integer t with minorant(t) >= target, or +inf.
double invert_minorant(int tau, bool action_suffix, double target,
                       const ConsistencyParams& p) {
    if (tau == 0 && !action_suffix) return std::max(1.0, std::ceil(target));
    double hi = 1.0;
    while (bound_minorant(tau, action_suffix, hi, p) < target) {
        hi *= 2.0;
        if (hi > 1e18) return kInf;
    }
    double lo = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bound_minorant(tau, action_suffix, mid, p) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return std::ceil(hi);
}

}  // namespace

double eligibility_threshold(const std::vector<int>& path_indices,
                             const ConsistencyParams& params) {
    double k = 0.0;
    int tau = 0;  // observation depth reached so far
    for (std::size_t level = 0; level < path_indices.size(); ++level) {
        const double idx = static_cast<double>(path_indices[level]);
        if (level % 2 == 0) {
            // Action edge out of h_tau: t >= K_tau^{-1}(f(i)).
            k = std::max(k, invert_minorant(tau, false, auger_f(idx, params.alpha_a), params));
        } else {
            // Observation edge into h_{tau+1}: t >= (K_{tau+1}^-)^{-1}(g(j)).
            k = std::max(k,
                         invert_minorant(tau + 1, true, auger_g(idx, params.alpha_o), params));
            ++tau;
        }
    }
    return k;
}

}  // namespace rhoplan
