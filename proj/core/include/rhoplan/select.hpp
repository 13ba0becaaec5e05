#pragma once

#include <cstdint>
#include <functional>

#include "rhoplan/model.hpp"
#include "rhoplan/rng.hpp"
#include "rhoplan/tree.hpp"

namespace rhoplan {

// Double progressive widening in the POMCPOW style: a node may gain a new
// child while |children| <= k N^alpha, otherwise UCB over the existing ones.
struct DpwParams {
    double k_a = 100.0;
    double alpha_a = 0.5;
    double k_o = 6.0;
    double alpha_o = 1.0 / 30.0;
    double c = 120.0;  // exploration constant
};

// Consistent selection in the Auger style. A new child is added exactly when
// floor(N^alpha) increments; otherwise actions maximize
//   sc(ha) = Q(ha) + sqrt(N(h)^e(d) / N(ha))
// and observations go to the least visited child. e(d) is a per-depth
// exponent; the default is the constant 0.5.
struct AugerParams {
    double alpha_a = 0.5;
    double alpha_o = 0.5;
    std::function<double(int)> e;  // depth -> exponent; empty means constant
    double e_const = 0.5;

    double e_at(int depth) const { return e ? e(depth) : e_const; }
};

struct ActionSelect {
    std::int32_t action_node = -1;
    bool expanded = false;
};

struct ObsSelect {
    std::int32_t branch = -1;  // index into ActionNode::branches
    bool is_new = false;
    Vec2 obs;
};

// Ties are always broken toward the lowest child index; new actions are tried
// in index order. Selection never mutates node statistics.
ActionSelect dpw_action_select(BeliefTree& tree, std::int32_t h, const DpwParams& params,
                               const ProblemModel& model);
ActionSelect auger_action_select(BeliefTree& tree, std::int32_t h, const AugerParams& params,
                                 const ProblemModel& model, int depth);

// Observation widening sees the 1-based visit number N(ha)+1, since N(ha) is
// incremented at the end of the enclosing SimulateQ call.
ObsSelect dpw_observation_select(BeliefTree& tree, std::int32_t ha, const DpwParams& params,
                                 const ProblemModel& model, Vec2 s_next, Rng& rng);
ObsSelect auger_observation_select(BeliefTree& tree, std::int32_t ha, const AugerParams& params,
                                   const ProblemModel& model, Vec2 s_next, Rng& rng);

/*
 * Deterministic visitation lower bounds for the Auger strategies:
 *
 *   f(i) = i^(1/(alpha_a (1-alpha_a)))      F(n) = (1/4) n^(e (1-alpha_a))
 *   g(j) = ceil((j+1)^(1/alpha_o))          G(n) = n / floor(n)^alpha_o - 1
 *
 * A node at observation depth tau satisfies N(h_tau; t) >= K_tau(t) once t
 * passes the path's eligibility threshold, with
 *
 *   K_0(t) = t,   K_tau^-(t) = F(K_{tau-1}(t)),   K_tau(t) = G(K_tau^-(t)),
 *
 * i.e. K_tau = (G o F)^tau applied to t. G is evaluated only at integer
 * arguments >= 1 (its floor form is ill-behaved below 1); compositions whose
 * inner value drops below 1 are reported as vacuous.
 */
struct ConsistencyParams {
    double alpha_a = 0.5;
    double alpha_o = 0.5;
    double e = 0.5;
};

struct BoundValue {
    double value = 0.0;
    bool vacuous = false;  // composition left G's domain; no claim is made
};

double auger_f(double i, double alpha_a);
double auger_g(double j, double alpha_o);
double auger_F(double n, double alpha_a, double e);
double auger_G(double n, double alpha_o);

// K_tau(t) for observation-terminated paths (tau = number of observation
// edges; tau = 0 is the root, K_0(t) = t).
BoundValue consistency_bound(int tau, double t, const ConsistencyParams& params);

// K_tau^-(t) for paths ending with an action edge (tau >= 1).
BoundValue consistency_bound_action(int tau, double t, const ConsistencyParams& params);

// Smallest iteration count past which the visitation bounds are asserted for
// the path with the given 1-based creation indices (alternating action,
// observation, action, ...). Conservative: inversion runs on a monotone
// minorant of K, so thresholds are never under-reported. Returns +inf when
// the composition is not invertible on the probed range.
double eligibility_threshold(const std::vector<int>& path_indices,
                             const ConsistencyParams& params);

}  // namespace rhoplan
