#pragma once

#include <cstddef>

#include "ctql/environment.hpp"
#include "ctql/grid.hpp"

namespace ctql {

// Continuous observation of one herder/target pair: relative distance and
// bearing, the goal-centered herder/target angle folded to [0, pi/2], and the
// target's last step velocity in polar form.
Observation observe(const WorldState& world, std::size_t herder_index,
                    std::size_t target_index, const EnvParams& p);

}  // namespace ctql
