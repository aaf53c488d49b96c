#include "ctql/tutor.hpp"

#include <cmath>

namespace ctql {

Vec2 model_velocity_estimate(const Vec2& x_tau, const Vec2& x_h, const TutorParams& p) {
    const Vec2 d = x_tau - x_h;
    if (d.norm() >= p.rho_hat_tau) return {0.0, 0.0};
    return p.gamma_model * d;
}

Vec2 tutor_control(const Vec2& x_tau, const Vec2& x_h, const TutorParams& p) {
    return p.k_i * model_velocity_estimate(x_tau, x_h, p) + p.k_p * x_tau;
}

std::pair<ActionId, PolicyBranch> policy_t(const Vec2& v, const Grid& grid, double eps,
                                           RngStream& rng) {
    if (rng.uniform(0.0, 1.0) < eps)
        return {rng.uniform_index(grid.n_actions()), PolicyBranch::TutorRandom};
    return {nearest_action(v, grid), PolicyBranch::TutorNearest};
}

Vec2 pursuit_control(const Vec2& x_tau, const Vec2& x_h, double v_h_max) {
    return v_h_max * unit_or_zero(x_tau - x_h);
}

std::pair<std::complex<double>, std::complex<double>> closed_loop_eigenvalues(double k_i,
                                                                              double k_p) {
    // lambda = [(1 - k_i) +/- sqrt((1 - k_i)^2 - 4 k_p)] / 2
    const std::complex<double> b(1.0 - k_i, 0.0);
    const std::complex<double> disc = std::sqrt(b * b - 4.0 * k_p);
    return {(b - disc) / 2.0, (b + disc) / 2.0};
}

double idealized_loop_final_radius(const Vec2& x_tau0, const Vec2& x_h0,
                                   const TutorParams& p, double ts, double duration_s) {
    Vec2 x_tau = x_tau0;
    Vec2 x_h = x_h0;
    const auto steps = static_cast<long long>(std::llround(duration_s / ts));
    for (long long k = 0; k < steps; ++k) {
        const Vec2 v_tau = p.gamma_model * (x_tau - x_h); // coupling forced on
        const Vec2 u = p.k_i * v_tau + p.k_p * x_tau;
        x_tau += ts * v_tau;
        x_h += ts * u;
    }
    return x_tau.norm();
}

}  // namespace ctql
