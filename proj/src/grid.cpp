#include "ctql/grid.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace ctql {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::uint32_t bin_count(double range, double step) {
    return static_cast<std::uint32_t>(std::llround(range / step));
}

// Half-open bins with top clamp; the value `range` falls in the last bin.
std::uint32_t bin_index(double value, double step, std::uint32_t n_bins) {
    if (value <= 0.0) return 0;
    auto i = static_cast<std::int64_t>(std::floor(value / step));
    if (i >= n_bins) i = n_bins - 1;
    return static_cast<std::uint32_t>(i);
}

// Angles normalized to [0, 2pi) before binning, so 2pi maps to bin 0.
std::uint32_t angle_bin(double angle, double step, std::uint32_t n_bins) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return bin_index(a, step, n_bins);
}

}  // namespace

Grid Grid::coarse(double rho_hat_tau, double v_h_max) {
    Grid g;
    g.d_step = rho_hat_tau / 6.0;
    g.d_range = rho_hat_tau;
    g.rel_angle_step = kTwoPi / 6.0;
    g.herder_angle_step = M_PI / 10.0;
    g.herder_angle_range = M_PI / 2.0;
    g.speed_step = v_h_max / 3.0;
    g.speed_range = v_h_max;
    g.speed_angle_step = kTwoPi / 4.0;
    g.action_mag_step = v_h_max / 10.0;
    g.action_mag_max = v_h_max;
    g.action_angle_step = kTwoPi / 20.0;
    return g;
}

Grid Grid::fine(double rho_hat_tau, double v_h_max) {
    Grid g = coarse(rho_hat_tau, v_h_max);
    g.d_step = rho_hat_tau / 10.0;
    g.rel_angle_step = kTwoPi / 10.0;
    g.speed_step = v_h_max / 50.0;
    g.speed_angle_step = kTwoPi / 20.0;
    return g;
}

Grid Grid::from_name(const std::string& name, double rho_hat_tau, double v_h_max) {
    if (name == "coarse") return coarse(rho_hat_tau, v_h_max);
    if (name == "fine") return fine(rho_hat_tau, v_h_max);
    throw std::invalid_argument("unknown grid: " + name + " (expected coarse|fine)");
}

std::uint32_t Grid::n_distance_bins() const { return bin_count(d_range, d_step); }
std::uint32_t Grid::n_rel_angle_bins() const { return bin_count(kTwoPi, rel_angle_step); }
std::uint32_t Grid::n_herder_angle_bins() const {
    return bin_count(herder_angle_range, herder_angle_step);
}
std::uint32_t Grid::n_speed_bins() const { return bin_count(speed_range, speed_step); }
std::uint32_t Grid::n_speed_angle_bins() const { return bin_count(kTwoPi, speed_angle_step); }

std::uint32_t Grid::n_states() const {
    return n_distance_bins() * n_rel_angle_bins() * n_herder_angle_bins() *
           n_speed_bins() * n_speed_angle_bins();
}

std::uint32_t Grid::n_action_magnitudes() const {
    return bin_count(action_mag_max, action_mag_step) + 1;
}
std::uint32_t Grid::n_action_angles() const { return bin_count(kTwoPi, action_angle_step); }
std::uint32_t Grid::n_actions() const { return n_action_magnitudes() * n_action_angles(); }

std::uint64_t Grid::fingerprint() const {
    const double fields[] = {d_step,          d_range,           rel_angle_step,
                             herder_angle_step, herder_angle_range, speed_step,
                             speed_range,     speed_angle_step,  action_mag_step,
                             action_mag_max,  action_angle_step};
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (double f : fields) {
        std::uint64_t bits;
        std::memcpy(&bits, &f, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

void Grid::validate() const {
    const double steps[] = {d_step,        rel_angle_step,  herder_angle_step,
                            speed_step,    speed_angle_step, action_mag_step,
                            action_angle_step};
    for (double s : steps)
        if (!(s > 0.0)) throw std::invalid_argument("grid steps must be positive");
    const double pairs[][2] = {{d_range, d_step},
                               {kTwoPi, rel_angle_step},
                               {herder_angle_range, herder_angle_step},
                               {speed_range, speed_step},
                               {kTwoPi, speed_angle_step},
                               {action_mag_max, action_mag_step},
                               {kTwoPi, action_angle_step}};
    for (auto& [range, step] : pairs) {
        const double n = range / step;
        if (std::abs(n - std::llround(n)) > 1e-9 || std::llround(n) < 1)
            throw std::invalid_argument("grid range must be an integer multiple of its step");
    }
}

StateId encode_state(const Observation& obs, const Grid& g) {
    const std::uint32_t i_d = bin_index(obs.rel_distance, g.d_step, g.n_distance_bins());
    const std::uint32_t i_ra = angle_bin(obs.rel_angle, g.rel_angle_step, g.n_rel_angle_bins());
    const std::uint32_t i_ha =
        bin_index(obs.herder_angle, g.herder_angle_step, g.n_herder_angle_bins());
    const std::uint32_t i_s = bin_index(obs.target_speed, g.speed_step, g.n_speed_bins());
    const std::uint32_t i_sa =
        angle_bin(obs.target_speed_angle, g.speed_angle_step, g.n_speed_angle_bins());

    // Mixed-radix encoding, distance fastest-varying.
    StateId id = i_sa;
    id = id * g.n_speed_bins() + i_s;
    id = id * g.n_herder_angle_bins() + i_ha;
    id = id * g.n_rel_angle_bins() + i_ra;
    id = id * g.n_distance_bins() + i_d;
    return id;
}

Vec2 action_value(ActionId a, const Grid& g) {
    if (a >= g.n_actions()) throw std::out_of_range("action id out of range");
    const std::uint32_t n_angles = g.n_action_angles();
    const std::uint32_t mag_idx = a / n_angles;
    const std::uint32_t ang_idx = a % n_angles;
    return from_polar(mag_idx * g.action_mag_step, ang_idx * g.action_angle_step);
}

ActionId nearest_action(const Vec2& v, const Grid& g) {
    ActionId best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    const std::uint32_t n = g.n_actions();
    for (ActionId a = 0; a < n; ++a) {
        const double d2 = (action_value(a, g) - v).norm_sq();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = a;
        }
    }
    return best;
}

}  // namespace ctql
