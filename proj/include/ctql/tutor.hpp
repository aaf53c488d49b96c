#pragma once

#include <complex>
#include <utility>

#include "ctql/grid.hpp"
#include "ctql/params.hpp"
#include "ctql/rng.hpp"
#include "ctql/vec2.hpp"

namespace ctql {

enum class PolicyBranch { GreedyQ, RandomQ, TutorNearest, TutorRandom };

// Target velocity as predicted by the approximate model: coupling active only
// inside the estimated influence radius.
Vec2 model_velocity_estimate(const Vec2& x_tau, const Vec2& x_h, const TutorParams& p);

// Tutor feedback law. The velocity term comes from the approximate model, not
// from differencing measured positions.
Vec2 tutor_control(const Vec2& x_tau, const Vec2& x_h, const TutorParams& p);

// Tutor policy: nearest action to the suggested velocity, epsilon-random
// otherwise.
std::pair<ActionId, PolicyBranch> policy_t(const Vec2& v, const Grid& grid, double eps,
                                           RngStream& rng);

// Full-speed approach used while the herder is outside the estimated
// influence region. Coincident positions fall back to zero.
Vec2 pursuit_control(const Vec2& x_tau, const Vec2& x_h, double v_h_max);

// Roots of lambda^2 - (1 - k_i) lambda + k_p = 0, the tutored closed loop.
std::pair<std::complex<double>, std::complex<double>> closed_loop_eigenvalues(double k_i,
                                                                              double k_p);

// Integrates the approximate-model pair (coupling forced on, no saturation)
// with explicit Euler and reports the final target distance from the origin.
double idealized_loop_final_radius(const Vec2& x_tau0, const Vec2& x_h0,
                                   const TutorParams& p, double ts, double duration_s);

}  // namespace ctql
