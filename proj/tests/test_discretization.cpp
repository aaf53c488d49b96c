#include <doctest.h>

#include <cmath>
#include <limits>

#include "ctql/grid.hpp"
#include "ctql/observe.hpp"
#include "ctql/rng.hpp"

using namespace ctql;

namespace {

// Independent projection oracle: per magnitude ring pick the best angle with
// the law of cosines, never decoding action vectors.
ActionId nearest_action_oracle(const Vec2& v, const Grid& g) {
    const double vm = v.norm();
    const double va = bearing(v);
    ActionId best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::uint32_t m = 0; m < g.n_action_magnitudes(); ++m) {
        const double am = m * g.action_mag_step;
        for (std::uint32_t q = 0; q < g.n_action_angles(); ++q) {
            const double da = va - q * g.action_angle_step;
            const double d2 = am * am + vm * vm - 2.0 * am * vm * std::cos(da);
            const ActionId id = m * g.n_action_angles() + q;
            if (d2 < best_d2 - 1e-12) {
                best_d2 = d2;
                best = id;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("state counts match the two reference discretizations") {
    const Grid coarse = Grid::coarse();
    const Grid fine = Grid::fine();
    CHECK(coarse.n_states() == 2160);   // 6*6*5*3*4
    CHECK(fine.n_states() == 500000);   // 10*10*5*50*20
    CHECK(coarse.n_actions() == 220);   // 11 magnitudes * 20 angles
    CHECK(fine.n_actions() == 220);     // action space shared across grids
    coarse.validate();
    fine.validate();
}

TEST_CASE("encode_state basics") {
    const Grid g = Grid::coarse();
    SUBCASE("all-zero observation maps to state 0") {
        CHECK(encode_state(Observation{}, g) == 0);
    }
    SUBCASE("totality: random (even out-of-range) observations stay in [0, n_states)") {
        RngStream rng(6);
        for (int i = 0; i < 20000; ++i) {
            Observation obs;
            obs.rel_distance = rng.uniform(0.0, 50.0);
            obs.rel_angle = rng.uniform(-10.0, 10.0);
            obs.herder_angle = rng.uniform(0.0, M_PI);
            obs.target_speed = rng.uniform(0.0, 40.0);
            obs.target_speed_angle = rng.uniform(-10.0, 10.0);
            REQUIRE(encode_state(obs, g) < g.n_states());
        }
    }
    SUBCASE("distance bin index is monotone until clamped") {
        Observation obs;
        std::uint32_t prev = encode_state(obs, g);
        for (double d = 0.0; d < 2.0; d += 0.01) {
            obs.rel_distance = d;
            // with all other coordinates 0, the state id equals the distance bin
            const std::uint32_t id = encode_state(obs, g);
            REQUIRE(id >= prev);
            REQUIRE(id < g.n_distance_bins());
            prev = id;
        }
        CHECK(prev == g.n_distance_bins() - 1); // clamped at the top
    }
    SUBCASE("angle 2pi wraps to bin 0") {
        Observation a, b;
        a.rel_angle = 0.0;
        b.rel_angle = 2.0 * M_PI;
        CHECK(encode_state(a, g) == encode_state(b, g));
    }
}

TEST_CASE("action_value decoding") {
    const Grid g = Grid::fine();
    CHECK(action_value(0, g) == Vec2{0.0, 0.0});
    SUBCASE("max-magnitude action at angle index 0") {
        const ActionId a = (g.n_action_magnitudes() - 1) * g.n_action_angles();
        const Vec2 v = action_value(a, g);
        CHECK(v.x == doctest::Approx(14.0));
        CHECK(v.y == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(action_value(g.n_actions(), g), std::out_of_range);
}

TEST_CASE("nearest_action") {
    const Grid g = Grid::fine();
    SUBCASE("projection idempotence over the whole action set") {
        // The 20 zero-magnitude aliases all decode to (0,0) and tie-break
        // to action 0; nonzero actions round-trip exactly.
        for (ActionId a = 0; a < g.n_actions(); ++a) {
            const ActionId expected = a < g.n_action_angles() ? 0 : a;
            REQUIRE(nearest_action(action_value(a, g), g) == expected);
        }
    }
    SUBCASE("small vectors snap to the zero action") {
        CHECK(nearest_action({0.01, 0.0}, g) == 0);
    }
    SUBCASE("matches the independent oracle on 1000 random vectors") {
        RngStream rng(13);
        for (int i = 0; i < 1000; ++i) {
            const Vec2 v{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
            REQUIRE(nearest_action(v, g) == nearest_action_oracle(v, g));
        }
    }
}

TEST_CASE("observe") {
    EnvParams p;
    WorldState w;
    w.targets = {{1.0, 0.0}};
    w.herders = {{2.0, 0.0}};
    w.target_velocities = {{0.0, 0.0}};
    w.noise = {{0.0, 0.0}};

    SUBCASE("relative geometry") {
        const Observation obs = observe(w, 0, 0, p);
        CHECK(obs.rel_distance == doctest::Approx(1.0));
        CHECK(obs.rel_angle == doctest::Approx(M_PI));
        // herder, target, goal collinear with the herder beyond the target
        CHECK(obs.herder_angle == doctest::Approx(0.0));
        CHECK(obs.target_speed == 0.0);
    }
    SUBCASE("stationary target lands in speed bin 0") {
        const Grid g = Grid::fine();
        const StateId s = encode_state(observe(w, 0, 0, p), g);
        // speed and speed-angle are the slowest-varying radices
        CHECK(s < g.n_distance_bins() * g.n_rel_angle_bins() * g.n_herder_angle_bins());
    }
    SUBCASE("herder angle folds to [0, pi/2]") {
        w.herders = {{0.0, -1.0}}; // 90 degrees away at the goal center
        CHECK(observe(w, 0, 0, p).herder_angle == doctest::Approx(M_PI / 2));
        w.herders = {{-3.0, 0.0}}; // opposite side: clamped
        CHECK(observe(w, 0, 0, p).herder_angle == doctest::Approx(M_PI / 2));
    }
    SUBCASE("target at the goal center falls back to angle 0") {
        w.targets = {{0.0, 0.0}};
        CHECK(observe(w, 0, 0, p).herder_angle == 0.0);
    }
}
