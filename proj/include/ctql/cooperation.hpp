#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ctql/environment.hpp"
#include "ctql/vec2.hpp"

namespace ctql {

// The plane split into M equal angular sectors anchored at the targets'
// center of mass, refreshed every sector period.
struct SectorAssignment {
    Vec2 com{0.0, 0.0};
    double base_angle = 0.0; // bearing of the CoM from the goal center
    std::size_t n_herders = 1;
    double created_at = 0.0;

    // Sector that owns the point (relative to the goal center).
    std::size_t sector_of(const Vec2& x, const Vec2& x_g = {0.0, 0.0}) const;
};

// Per-herder currently chased target, if any.
struct TargetSelection {
    std::vector<std::optional<std::size_t>> chased;

    explicit TargetSelection(std::size_t n_herders = 0) : chased(n_herders) {}
};

Vec2 compute_com(std::span<const Vec2> targets);

SectorAssignment assign_sectors(const Vec2& com, std::size_t n_herders, double t);

// The hysteretic four-step selection rule: start with the farthest target in
// the sector; switch to a new farthest target tau' only when the current
// target's distance from the goal exceeds the tau-tau' separation.
std::optional<std::size_t> select_target(std::size_t herder, const WorldState& world,
                                         const SectorAssignment& assign,
                                         const TargetSelection& current, const EnvParams& p);

}  // namespace ctql
