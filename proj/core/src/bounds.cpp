#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rhoplan/harness.hpp"
#include "rhoplan/synthetic.hpp"

namespace rhoplan {

namespace {

// Creation-index path from the root, alternating action/observation edges.
std::vector<int> path_indices(const BeliefTree& tree, std::int32_t belief_node,
                              std::int32_t extra_action = -1) {
    std::vector<int> rev;
    if (extra_action >= 0) rev.push_back(tree.action(extra_action).creation_index);
    std::int32_t cur = belief_node;
    while (tree.node(cur).parent_action >= 0) {
        const BeliefNode& n = tree.node(cur);
        rev.push_back(n.creation_index);
        const ActionNode& a = tree.action(n.parent_action);
        rev.push_back(a.creation_index);
        cur = a.parent;
    }
    return {rev.rbegin(), rev.rend()};
}

std::string path_string(const std::vector<int>& indices) {
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        s += (i % 2 == 0 ? "a" : "o") + std::to_string(indices[i]);
        if (i + 1 < indices.size()) s += ".";
    }
    return s.empty() ? "root" : s;
}

// Visitation count in the bound's sense: the root is visited once per
// iteration, every other belief node once per touch of its branch.
std::int64_t observed_visits(const BeliefTree& tree, std::int32_t belief_node) {
    const BeliefNode& n = tree.node(belief_node);
    if (n.parent_action < 0) return n.visits - 1;
    for (const ObsBranch& b : tree.action(n.parent_action).branches)
        if (b.node == belief_node) return b.visits;
    return n.visits;
}

}  // namespace

BoundsResult bounds_experiment(const std::vector<std::int64_t>& checkpoints,
                               const ConsistencyParams& params, std::uint64_t seed) {
    if (checkpoints.empty()) throw std::invalid_argument("bounds_experiment: no checkpoints");
    InfoToyProblem problem;

    PlannerConfig cfg;
    cfg.max_depth = 2;
    cfg.strategy = SelectionKind::Auger;
    cfg.auger.alpha_a = params.alpha_a;
    cfg.auger.alpha_o = params.alpha_o;
    cfg.auger.e_const = params.e;
    std::int64_t horizon = 0;
    for (std::int64_t t : checkpoints) horizon = std::max(horizon, t);
    cfg.iteration_budget = horizon;

    BoundsResult result;

    auto check_at = [&](std::int64_t t, const BeliefTree& tree) {
        const double td = static_cast<double>(t);
        for (std::size_t id = 0; id < tree.node_count(); ++id) {
            const auto node_id = static_cast<std::int32_t>(id);
            const BeliefNode& n = tree.node(node_id);
            const std::vector<int> indices = path_indices(tree, node_id);
            const int tau = n.depth;
            const BoundValue k = consistency_bound(tau, td, params);
            const double threshold = eligibility_threshold(indices, params);
            const std::int64_t observed = observed_visits(tree, node_id);
            BoundsRow row{path_string(indices), tau,      t,   observed,
                          k.value,              threshold, true, k.vacuous};
            if (td >= threshold && !k.vacuous) {
                row.pass = static_cast<double>(observed) >= std::floor(k.value);
                if (!row.pass) result.violations += 1;
            } else if (k.vacuous) {
                result.vacuous_count += 1;
            }
            result.rows.push_back(std::move(row));

            // Action-suffix paths hanging off this node.
            for (std::int32_t ha : n.children) {
                const ActionNode& a = tree.action(ha);
                const std::vector<int> aidx = path_indices(tree, node_id, ha);
                const BoundValue ka = consistency_bound_action(tau + 1, td, params);
                const double thr = eligibility_threshold(aidx, params);
                BoundsRow arow{path_string(aidx), tau, t,    a.visits,
                               ka.value,          thr, true, ka.vacuous};
                if (td >= thr && !ka.vacuous) {
                    arow.pass = static_cast<double>(a.visits) >= std::floor(ka.value);
                    if (!arow.pass) result.violations += 1;
                } else if (ka.vacuous) {
                    result.vacuous_count += 1;
                }
                result.rows.push_back(std::move(arow));
            }
        }

        // Direct consistency checks of the selection procedures themselves:
        // a parent with N(v;t) >= f(i) (resp. g(j)) must have pushed child i
        // to at least F(N(v;t)) (resp. G(N(v;t))) visits.
        for (std::size_t id = 0; id < tree.node_count(); ++id) {
            const BeliefNode& n = tree.node(static_cast<std::int32_t>(id));
            const std::int64_t nv = observed_visits(tree, static_cast<std::int32_t>(id));
            for (std::int32_t ha : n.children) {
                const ActionNode& a = tree.action(ha);
                if (static_cast<double>(nv) >= auger_f(a.creation_index, params.alpha_a)) {
                    result.def1_checks += 1;
                    if (static_cast<double>(a.visits) <
                        auger_F(static_cast<double>(nv), params.alpha_a, params.e))
                        result.def1_violations += 1;
                }
            }
        }
        for (std::size_t id = 0; id < tree.action_count(); ++id) {
            const ActionNode& a = tree.action(static_cast<std::int32_t>(id));
            if (a.visits < 1) continue;
            for (const ObsBranch& b : a.branches) {
                const BeliefNode& child = tree.node(b.node);
                if (static_cast<double>(a.visits) >=
                    auger_g(child.creation_index, params.alpha_o)) {
                    result.def1_checks += 1;
                    if (static_cast<double>(b.visits) <
                        auger_G(static_cast<double>(a.visits), params.alpha_o))
                        result.def1_violations += 1;
                }
            }
        }
    };

    cfg.iteration_hook = [&](std::int64_t t, const BeliefTree& tree) {
        for (std::int64_t cp : checkpoints)
            if (t == cp) check_at(t, tree);
    };

    RhoPomcpowPlanner planner(problem, cfg);
    Rng rng(seed);
    planner.plan(point_belief({0.0, 0.0}), 0.0, rng);
    return result;
}

void write_bounds_csv(const std::string& path, const std::vector<BoundsRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "path,tau,t,N_observed,K_bound,threshold_k,pass\n";
    for (const BoundsRow& r : rows)
        out << r.path << "," << r.tau << "," << r.t << "," << r.n_observed << ","
            << format_double(r.k_bound) << "," << format_double(r.threshold_k) << ","
            << (r.pass ? 1 : 0) << "\n";
}

}  // namespace rhoplan
