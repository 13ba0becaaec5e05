#include <doctest.h>

#include <cmath>

#include "rhoplan/envs.hpp"
#include "rhoplan/model.hpp"
#include "rhoplan/rng.hpp"

using namespace rhoplan;

namespace {

LightDark2D lightdark() { return LightDark2D(LightDark2D::default_map()); }

}  // namespace

TEST_CASE("compass action set: eight unit directions plus terminating stay") {
    const LightDark2D model = lightdark();
    CHECK(model.action_count() == 9);
    for (int a = 0; a < 8; ++a) {
        CHECK(norm(model.action_delta(a)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(model.action_terminates(a));
    }
    CHECK(model.action_delta(kStayAction) == Vec2{0.0, 0.0});
    CHECK(model.action_terminates(kStayAction));
    CHECK(model.action_delta(0) == Vec2{1.0, 0.0});
    CHECK(model.action_delta(2) == Vec2{0.0, 1.0});
    CHECK(model.discount() == doctest::Approx(0.95));
    CHECK(model.shaping_weight() == doctest::Approx(30.0));
    CHECK(model.state_dim() == 2);
}

TEST_CASE("transition sampler: empirical mean and covariance match N(s+a, 0.1 I)") {
    const LightDark2D model = lightdark();
    Rng rng(42);
    const int n = 100000;
    const int action = 2;  // delta (0,1)
    double mx = 0, my = 0;
    std::vector<Vec2> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Vec2 s = model.transition_sample({0.0, 0.0}, action, rng);
        samples.push_back(s);
        mx += s.x;
        my += s.y;
    }
    mx /= n;
    my /= n;
    CHECK(std::abs(mx - 0.0) < 0.01);
    CHECK(std::abs(my - 1.0) < 0.01);

    double cxx = 0, cyy = 0, cxy = 0;
    for (const Vec2& s : samples) {
        cxx += (s.x - mx) * (s.x - mx);
        cyy += (s.y - my) * (s.y - my);
        cxy += (s.x - mx) * (s.y - my);
    }
    cxx /= n - 1;
    cyy /= n - 1;
    cxy /= n - 1;
    CHECK(std::abs(cxx - 0.1) < 0.005);  // within 5% of 0.1
    CHECK(std::abs(cyy - 0.1) < 0.005);
    CHECK(std::abs(cxy) < 0.005);
}

TEST_CASE("transition density: peak value, symmetry, unit mass") {
    const LightDark2D model = lightdark();
    const Vec2 s{0.0, 0.0};
    const int action = 0;  // delta (1,0)
    const Vec2 mean{1.0, 0.0};

    // Peak of the 2-D Gaussian with |Sigma| = 0.01.
    CHECK(model.transition_density(mean, s, action) ==
          doctest::Approx(1.5915494309189535).epsilon(1e-12));

    const Vec2 d{0.17, -0.23};
    CHECK(model.transition_density(mean + d, s, action) ==
          doctest::Approx(model.transition_density(mean - d, s, action)).epsilon(1e-12));

    // Grid quadrature over a wide box around the mean.
    const double sigma = std::sqrt(0.1);
    const double half = 6.0 * sigma;
    const int cells = 600;
    const double step = 2.0 * half / cells;
    double mass = 0.0;
    for (int i = 0; i < cells; ++i) {
        for (int j = 0; j < cells; ++j) {
            const Vec2 p{mean.x - half + (i + 0.5) * step, mean.y - half + (j + 0.5) * step};
            mass += model.transition_density(p, s, action);
        }
    }
    mass *= step * step;
    CHECK(std::abs(mass - 1.0) < 1e-3);

    // Monte Carlo mass estimate over the same box.
    Rng rng(7);
    double mc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const Vec2 p{rng.uniform(mean.x - half, mean.x + half),
                     rng.uniform(mean.y - half, mean.y + half)};
        mc += model.transition_density(p, s, action);
    }
    mc *= (2.0 * half) * (2.0 * half) / n;
    CHECK(std::abs(mc - 1.0) < 0.02);
}

TEST_CASE("observation covariance: distance scaling and per-problem beacon noise") {
    SUBCASE("light-dark at beacon distance sqrt(2) gives 1.5 I") {
        MapConfig m = LightDark2D::default_map();
        m.beacons = {{1.0, 1.0}};
        const LightDark2D model(m);
        const DiagCov2 cov = model.observation_cov({0.0, 0.0});
        CHECK(cov.xx == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(cov.yy == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("active localization at a beacon of norm 2 gives 0.25 I") {
        MapConfig m = ActiveLocalization::default_map();
        m.beacons = {{0.0, 2.0}};
        m.obstacles.clear();
        const ActiveLocalization model(m);
        const DiagCov2 cov = model.observation_cov({0.0, 2.0});
        CHECK(cov.xx == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(cov.yy == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("observation density peaks at x_b - s'") {
        const LightDark2D model = lightdark();
        const Vec2 s_next{1.0, 0.5};
        const Vec2 beacon = model.map().beacons[0];
        const Vec2 peak = beacon - s_next;
        const double at_peak = model.observation_density(peak, 0, s_next);
        CHECK(at_peak > model.observation_density(peak + Vec2{0.3, 0.0}, 0, s_next));
        CHECK(at_peak > model.observation_density(peak + Vec2{0.0, -0.3}, 0, s_next));
    }
}

TEST_CASE("densities are strictly positive over a wide range") {
    const LightDark2D model = lightdark();
    CHECK(model.transition_density({6.0, 6.0}, {0.0, 0.0}, 0) > 0.0);
    CHECK(model.observation_density({25.0, -25.0}, 0, {0.0, 0.0}) > 0.0);
}

TEST_CASE("sampler and density agree: histogram deviation under 5%") {
    const LightDark2D model = lightdark();
    Rng rng(1234);
    const Vec2 s{0.3, -0.2};
    const int action = 1;
    const Vec2 mean = s + model.action_delta(action);
    const double sigma = std::sqrt(0.1);

    const int bins = 8;  // central 2-sigma box
    const double half = 2.0 * sigma;
    const double step = 2.0 * half / bins;
    std::vector<double> counts(bins * bins, 0.0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const Vec2 p = model.transition_sample(s, action, rng);
        const double fx = std::floor((p.x - (mean.x - half)) / step);
        const double fy = std::floor((p.y - (mean.y - half)) / step);
        if (fx >= 0 && fx < bins && fy >= 0 && fy < bins)
            counts[static_cast<int>(fx) * bins + static_cast<int>(fy)] += 1.0;
    }
    int compared = 0;
    for (int bx = 0; bx < bins; ++bx) {
        for (int by = 0; by < bins; ++by) {
            // Integrate the density over the bin on a sub-grid.
            double expected = 0.0;
            const int sub = 6;
            for (int ix = 0; ix < sub; ++ix)
                for (int iy = 0; iy < sub; ++iy)
                    expected += model.transition_density(
                        {mean.x - half + (bx + (ix + 0.5) / sub) * step,
                         mean.y - half + (by + (iy + 0.5) / sub) * step},
                        s, action);
            expected *= step * step / (sub * sub);
            if (expected < 0.01) continue;  // skip noise-dominated bins
            const double observed = counts[bx * bins + by] / n;
            CHECK(std::abs(observed - expected) / expected < 0.05);
            ++compared;
        }
    }
    CHECK(compared >= 10);
}
