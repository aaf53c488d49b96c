#include "ctql/observe.hpp"

#include <cmath>
#include <stdexcept>

namespace ctql {

namespace {

// Unsigned angle between two bearings, folded to [0, pi].
double angle_between(double a, double b) {
    double d = std::fabs(a - b);
    if (d > M_PI) d = 2.0 * M_PI - d;
    return d;
}

}  // namespace

Observation observe(const WorldState& world, std::size_t herder_index,
                    std::size_t target_index, const EnvParams& p) {
    if (herder_index >= world.n_herders() || target_index >= world.n_targets())
        throw std::out_of_range("observe: agent index out of range");

    const Vec2& x_h = world.herders[herder_index];
    const Vec2& x_tau = world.targets[target_index];

    Observation obs;
    const Vec2 rel = x_tau - x_h;
    obs.rel_distance = rel.norm();

    // All angles are measured in the goal frame, i.e. relative to the
    // target's bearing from the goal center. This keeps the state rotation
    // invariant and, crucially, distinguishes "herder outside pushing the
    // target goal-ward" from "herder inside driving it away" — in the
    // absolute frame those two configurations collapse onto the same state.
    const Vec2 tau_from_goal = x_tau - p.x_g;
    const double tau_bearing = tau_from_goal.norm() == 0.0 ? 0.0 : bearing(tau_from_goal);
    auto goal_frame = [tau_bearing](double abs_angle) {
        double a = abs_angle - tau_bearing;
        while (a < 0.0) a += 2.0 * M_PI;
        while (a >= 2.0 * M_PI) a -= 2.0 * M_PI;
        return a;
    };

    obs.rel_angle = rel.norm() == 0.0 ? 0.0 : goal_frame(bearing(rel));

    // Angle at the goal center between the herder and target bearings,
    // clamped to pi/2; measures whether the herder sits behind the target.
    const Vec2 h_from_goal = x_h - p.x_g;
    if (h_from_goal.norm() == 0.0 || tau_from_goal.norm() == 0.0) {
        obs.herder_angle = 0.0;
    } else {
        obs.herder_angle =
            std::min(angle_between(bearing(h_from_goal), tau_bearing), M_PI / 2.0);
    }

    const Vec2& v_tau = world.target_velocities[target_index];
    obs.target_speed = v_tau.norm();
    obs.target_speed_angle = v_tau.norm() == 0.0 ? 0.0 : goal_frame(bearing(v_tau));
    return obs;
}

}  // namespace ctql
