#include "ctql/environment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctql {

bool WorldState::finite() const {
    for (const auto& x : targets)
        if (!x.finite()) return false;
    for (const auto& x : herders)
        if (!x.finite()) return false;
    return std::isfinite(t);
}

int interaction_indicator(const Vec2& x_tau, const Vec2& x_h, double rho) {
    return (x_tau - x_h).norm() < rho ? 1 : 0;
}

Vec2 herder_repulsion(const Vec2& x_tau, std::span<const Vec2> herders, const EnvParams& p) {
    Vec2 f{0.0, 0.0};
    for (const auto& x_h : herders) {
        if (!interaction_indicator(x_tau, x_h, p.rho_tau)) continue;
        const Vec2 d = x_tau - x_h;
        const double dist = std::max(d.norm(), 1e-6);
        f += (p.beta1 / (dist * dist * dist)) * d;
    }
    return f;
}

NoisePhase resample_noise(RngStream& rng, double beta_max) {
    NoisePhase n;
    n.beta2 = beta_max > 0.0 ? rng.uniform(0.0, beta_max) : 0.0;
    n.theta = rng.uniform(0.0, 2.0 * M_PI);
    return n;
}

Vec2 saturate(const Vec2& v, double v_max) {
    const double n = v.norm();
    if (n < v_max) return v;
    if (n == 0.0) return {0.0, 0.0};
    return (v_max / n) * v;
}

bool in_goal(const Vec2& x, const EnvParams& p) { return (x - p.x_g).norm() < p.rho_g; }

void step_world(WorldState& w, std::span<const Vec2> herder_velocities, const EnvParams& p,
                std::span<RngStream> noise_streams) {
    if (herder_velocities.size() != w.herders.size())
        throw std::invalid_argument("herder velocity count does not match herder count");
    if (noise_streams.size() != w.targets.size())
        throw std::invalid_argument("noise stream count does not match target count");

    for (std::size_t i = 0; i < w.targets.size(); ++i) {
        const Vec2 f = herder_repulsion(w.targets[i], w.herders, p) +
                       from_polar(w.noise[i].beta2, w.noise[i].theta);
        const Vec2 v = saturate(f, p.v_tau_max);
        w.targets[i] += p.ts * v;
        w.target_velocities[i] = v;
    }
    for (std::size_t j = 0; j < w.herders.size(); ++j)
        w.herders[j] += p.ts * saturate(herder_velocities[j], p.v_h_max);

    const double t_new = w.t + p.ts;
    // Noise breakpoints sit exactly at multiples of delta_t_noise; the small
    // slack absorbs accumulated floating-point drift in t.
    const double slack = 1e-9;
    if (std::floor((t_new + slack) / p.delta_t_noise) >
        std::floor((w.t + slack) / p.delta_t_noise)) {
        for (std::size_t i = 0; i < w.targets.size(); ++i)
            w.noise[i] = resample_noise(noise_streams[i], p.beta_max);
    }
    w.t = t_new;

    if (!w.finite())
        throw std::runtime_error("simulation diverged at t = " + std::to_string(w.t));
}

}  // namespace ctql
