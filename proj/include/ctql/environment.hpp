#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ctql/params.hpp"
#include "ctql/rng.hpp"
#include "ctql/vec2.hpp"

namespace ctql {

// Per-target random-diffusion phase, piecewise constant between refreshes.
struct NoisePhase {
    double beta2 = 0.0; // speed [m/s], in [0, beta_max)
    double theta = 0.0; // heading [rad], in [0, 2pi)
};

// The simulated plant: every target and herder position plus noise phases.
struct WorldState {
    std::vector<Vec2> targets;
    std::vector<Vec2> herders;
    std::vector<Vec2> target_velocities; // last computed step velocities
    std::vector<NoisePhase> noise;
    double t = 0.0;

    std::size_t n_targets() const { return targets.size(); }
    std::size_t n_herders() const { return herders.size(); }
    bool finite() const;
};

// 1 iff ||x_tau - x_h|| < rho, strictly.
int interaction_indicator(const Vec2& x_tau, const Vec2& x_h, double rho);

// Inverse-square repulsion summed over all herders inside the influence
// radius. Distances below 1e-6 m are clamped in the denominator; saturation
// bounds the resulting velocity anyway.
Vec2 herder_repulsion(const Vec2& x_tau, std::span<const Vec2> herders, const EnvParams& p);

NoisePhase resample_noise(RngStream& rng, double beta_max);

// v when ||v|| < v_max, else scaled to the cap; preserves direction.
Vec2 saturate(const Vec2& v, double v_max);

bool in_goal(const Vec2& x, const EnvParams& p);

// One explicit-Euler step. noise_streams holds one independent stream per
// target; all targets resample at the same global multiples of delta_t_noise.
void step_world(WorldState& w, std::span<const Vec2> herder_velocities, const EnvParams& p,
                std::span<RngStream> noise_streams);

}  // namespace ctql
