#include "ctql/cooperation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctql {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

}  // namespace

std::size_t SectorAssignment::sector_of(const Vec2& x, const Vec2& x_g) const {
    const double rel = wrap_angle(bearing(x - x_g) - base_angle);
    auto idx = static_cast<std::size_t>(rel / (kTwoPi / static_cast<double>(n_herders)));
    if (idx >= n_herders) idx = n_herders - 1; // rel == 2pi after rounding
    return idx;
}

Vec2 compute_com(std::span<const Vec2> targets) {
    if (targets.empty()) throw std::invalid_argument("compute_com needs at least one target");
    Vec2 sum{0.0, 0.0};
    for (const auto& x : targets) sum += x;
    return (1.0 / static_cast<double>(targets.size())) * sum;
}

SectorAssignment assign_sectors(const Vec2& com, std::size_t n_herders, double t) {
    if (n_herders == 0) throw std::invalid_argument("assign_sectors needs at least one herder");
    SectorAssignment a;
    a.com = com;
    a.base_angle = bearing(com); // bearing() falls back to 0 for the origin
    a.n_herders = n_herders;
    a.created_at = t;
    return a;
}

std::optional<std::size_t> select_target(std::size_t herder, const WorldState& world,
                                         const SectorAssignment& assign,
                                         const TargetSelection& current, const EnvParams& p) {
    // Farthest-from-goal target currently inside this herder's sector,
    // ties to the lowest index.
    std::optional<std::size_t> farthest;
    double farthest_d = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < world.targets.size(); ++i) {
        if (assign.sector_of(world.targets[i], p.x_g) != herder) continue;
        const double d = (world.targets[i] - p.x_g).norm();
        if (d > farthest_d) {
            farthest_d = d;
            farthest = i;
        }
    }

    const auto& cur = current.chased[herder];
    if (!cur.has_value()) return farthest;
    if (!farthest.has_value() || *farthest == *cur) return cur;

    // Switch to the new farthest tau' only if it is worth abandoning tau:
    // the current target's distance from the goal must exceed the tau-tau'
    // separation.
    const double cur_d = (world.targets[*cur] - p.x_g).norm();
    const double separation = (world.targets[*cur] - world.targets[*farthest]).norm();
    return cur_d > separation ? farthest : cur;
}

}  // namespace ctql
