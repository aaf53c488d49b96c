#pragma once

#include <cstdint>
#include <string>

#include "ctql/vec2.hpp"

namespace ctql {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

// One herder's continuous observation, before binning.
struct Observation {
    double rel_distance = 0.0;       // ||x_tau - x_h|| [m]
    double rel_angle = 0.0;          // bearing of (x_tau - x_h), [0, 2pi)
    double herder_angle = 0.0;       // goal-centered herder/target angle, [0, pi/2]
    double target_speed = 0.0;       // ||target velocity|| [m/s]
    double target_speed_angle = 0.0; // bearing of target velocity, [0, 2pi)
};

// State/action discretization. States are half-open bins (floor indexing,
// top-clamped); actions are concrete grid-point velocities.
struct Grid {
    double d_step, d_range;                   // relative distance [m]
    double rel_angle_step;                    // relative bearing, range 2pi
    double herder_angle_step, herder_angle_range;
    double speed_step, speed_range;           // target speed [m/s]
    double speed_angle_step;                  // target velocity bearing, range 2pi
    double action_mag_step, action_mag_max;   // herder speed grid [m/s]
    double action_angle_step;                 // herder bearing grid, range 2pi

    static Grid coarse(double rho_hat_tau = 1.0, double v_h_max = 14.0);
    static Grid fine(double rho_hat_tau = 1.0, double v_h_max = 14.0);
    static Grid from_name(const std::string& name, double rho_hat_tau = 1.0,
                          double v_h_max = 14.0);

    std::uint32_t n_distance_bins() const;
    std::uint32_t n_rel_angle_bins() const;
    std::uint32_t n_herder_angle_bins() const;
    std::uint32_t n_speed_bins() const;
    std::uint32_t n_speed_angle_bins() const;
    std::uint32_t n_states() const;

    std::uint32_t n_action_magnitudes() const; // grid points, includes 0 and max
    std::uint32_t n_action_angles() const;
    std::uint32_t n_actions() const;

    // Stable digest of every step/range; persisted Q-tables must match it.
    std::uint64_t fingerprint() const;

    void validate() const;
};

StateId encode_state(const Observation& obs, const Grid& g);

// Decodes an action into the herder velocity it commands.
Vec2 action_value(ActionId a, const Grid& g);

// Metric projection of an arbitrary velocity onto the action set.
// Ties break to the lowest ActionId.
ActionId nearest_action(const Vec2& v, const Grid& g);

}  // namespace ctql
