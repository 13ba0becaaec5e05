#include "rhoplan/model.hpp"

#include <algorithm>

namespace rhoplan {

int ProblemModel::rollout_action(Vec2 /*s*/, int remaining, int initial_depth, Rng& rng) const {
    const int stay_window = std::max(1, initial_depth / 3);
    const bool allow_stay = remaining <= stay_window;
    int candidates[32];
    int n = 0;
    for (int a = 0; a < action_count(); ++a)
        if (allow_stay || !action_terminates(a)) candidates[n++] = a;
    if (n == 0)
        for (int a = 0; a < action_count(); ++a) candidates[n++] = a;
    return candidates[rng.uniform_int(n)];
}

}  // namespace rhoplan
