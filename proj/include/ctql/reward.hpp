#pragma once

#include <algorithm>
#include <cmath>

#include "ctql/params.hpp"
#include "ctql/vec2.hpp"

namespace ctql {

// The printed sigmoid 1/(1 - e^{-z}) is singular at z = 0, so the argument is
// clamped away from zero; the bounded logistic 1/(1 + e^{-z}) is the default.
inline double sigma(double z, SigmaVariant variant) {
    if (variant == SigmaVariant::Logistic) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    constexpr double kMinAbs = 1e-6;
    if (std::abs(z) < kMinAbs) z = (z < 0.0) ? -kMinAbs : kMinAbs;
    return 1.0 / (1.0 - std::exp(-z));
}

// Radial progress of the target between consecutive snapshots; positive when
// it moved toward the origin.
inline double r1(const Vec2& x_tau_k, const Vec2& x_tau_k1) {
    return x_tau_k.norm() - x_tau_k1.norm();
}

// Penalty for the herder sitting inside the goal region.
inline double r2(const Vec2& x_h_k1, double rho_g, const RewardParams& p) {
    return sigma(p.k_bar * (x_h_k1.norm() - rho_g), p.sigma_variant) - 1.0;
}

inline double reward(const Vec2& x_tau_k, const Vec2& x_tau_k1, const Vec2& x_h_k1,
                     const RewardParams& p, const EnvParams& env) {
    return p.k1 * r1(x_tau_k, x_tau_k1) + p.k2 * r2(x_h_k1, env.rho_g, p);
}

// |R| <= k1 * v_tau_max * ts + k2 * sup|R2|; with the logistic sigma,
// sup|R2| = 1. Feeds the Q-value boundedness check.
inline double reward_bound(const RewardParams& p, const EnvParams& env) {
    return p.k1 * env.v_tau_max * env.ts + p.k2 * 1.0;
}

}  // namespace ctql
