#include "ctql/trial.hpp"

#include <cmath>
#include <stdexcept>

#include "ctql/observe.hpp"
#include "ctql/reward.hpp"

namespace ctql {

namespace {

// Success requires containment through the final seconds of the trial, so
// "reach and remain" is testable in finite time.
constexpr double kContainmentMarginS = 5.0;

std::size_t branch_index(PolicyBranch b) { return static_cast<std::size_t>(b); }

}  // namespace

Mode mode_from_string(const std::string& s) {
    if (s == "QL" || s == "ql") return Mode::QL;
    if (s == "CT" || s == "ct") return Mode::CT;
    if (s == "CTQL" || s == "ctql") return Mode::CTQL;
    throw std::invalid_argument("unknown mode: " + s + " (expected QL|CT|CTQL)");
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::QL: return "QL";
        case Mode::CT: return "CT";
        case Mode::CTQL: return "CTQL";
    }
    return "?";
}

void q_update(QTable& table, StateId s, ActionId a, double r, StateId s_next,
              const LearningParams& p) {
    const double old = table.value(s, a);
    const double target = r + p.gamma * table.max_value(s_next);
    table.set(s, a, (1.0 - p.alpha) * old + p.alpha * target);
}

std::pair<ActionId, double> greedy_action(const QTable& table, StateId s) {
    return table.greedy(s);
}

std::pair<ActionId, PolicyBranch> policy_q(const QTable& table, StateId s, double eps,
                                           RngStream& rng) {
    if (rng.uniform(0.0, 1.0) < eps)
        return {rng.uniform_index(table.n_actions()), PolicyBranch::RandomQ};
    return {greedy_action(table, s).first, PolicyBranch::GreedyQ};
}

std::pair<ActionId, PolicyBranch> select_action_ctql(const QTable& table, StateId s,
                                                     const Vec2& tutor_suggestion,
                                                     const Grid& grid, double eps,
                                                     RngStream& rng) {
    if (table.max_value(s) > 0.0) return policy_q(table, s, eps, rng);
    return policy_t(tutor_suggestion, grid, eps, rng);
}

std::optional<double> settling_time(const std::vector<std::vector<double>>& radial_traces,
                                    double rho_g, double ts) {
    if (radial_traces.empty()) return std::nullopt;
    const std::size_t n = radial_traces.front().size();
    std::ptrdiff_t last_outside = -1;
    for (const auto& trace : radial_traces) {
        for (std::size_t k = trace.size(); k-- > 0;) {
            const auto sk = static_cast<std::ptrdiff_t>(k);
            if (sk <= last_outside) break;
            if (trace[k] >= rho_g) last_outside = sk;
        }
    }
    if (last_outside < 0) return 0.0;
    if (last_outside == static_cast<std::ptrdiff_t>(n) - 1) return std::nullopt;
    return (static_cast<double>(last_outside) + 1.0) * ts;
}

TrialResult run_trial(WorldState world0, QTable& table, const TrialConfig& cfg,
                      std::uint64_t master_seed, std::uint64_t trial_index) {
    if (!world0.finite()) throw std::invalid_argument("initial world state is not finite");
    const std::size_t n_targets = world0.n_targets();
    const std::size_t n_herders = world0.n_herders();
    if (n_targets == 0 || n_herders == 0)
        throw std::invalid_argument("trial needs at least one target and one herder");

    WorldState w = std::move(world0);
    w.target_velocities.assign(n_targets, Vec2{});
    w.noise.resize(n_targets);

    std::vector<RngStream> noise_rng;
    std::vector<RngStream> explore_rng;
    noise_rng.reserve(n_targets);
    explore_rng.reserve(n_herders);
    for (std::size_t i = 0; i < n_targets; ++i)
        noise_rng.emplace_back(master_seed, trial_index, StreamKind::EnvNoise, i);
    for (std::size_t j = 0; j < n_herders; ++j)
        explore_rng.emplace_back(master_seed, trial_index, StreamKind::Exploration, j);
    for (std::size_t i = 0; i < n_targets; ++i)
        w.noise[i] = resample_noise(noise_rng[i], cfg.env.beta_max);

    const auto steps = static_cast<std::uint64_t>(std::llround(cfg.trial_length_s / cfg.env.ts));
    const auto sector_steps =
        static_cast<std::uint64_t>(std::llround(cfg.sector_period_s / cfg.env.ts));

    TrialResult res;
    res.steps = steps;
    res.target_radii.assign(n_targets, {});
    res.herder_radii.assign(n_herders, {});
    for (auto& tr : res.target_radii) tr.reserve(steps + 1);
    for (auto& tr : res.herder_radii) tr.reserve(steps + 1);
    if (cfg.record_positions) {
        res.target_positions.assign(n_targets, {});
        res.herder_positions.assign(n_herders, {});
    }

    auto record = [&](const WorldState& world) {
        for (std::size_t i = 0; i < n_targets; ++i)
            res.target_radii[i].push_back((world.targets[i] - cfg.env.x_g).norm());
        for (std::size_t j = 0; j < n_herders; ++j)
            res.herder_radii[j].push_back((world.herders[j] - cfg.env.x_g).norm());
        if (cfg.record_positions) {
            for (std::size_t i = 0; i < n_targets; ++i)
                res.target_positions[i].push_back(world.targets[i]);
            for (std::size_t j = 0; j < n_herders; ++j)
                res.herder_positions[j].push_back(world.herders[j]);
        }
    };
    record(w);

    const bool learning = cfg.mode != Mode::CT;
    const auto decision_steps_len = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(cfg.decision_period_s / cfg.env.ts)));
    SectorAssignment sectors;
    TargetSelection selection(n_herders);

    // A held decision segment: the action chosen at a decision instant is
    // applied for up to decision_steps_len world steps; one Q-update closes
    // the segment using the segment-wide target displacement (R1 telescopes
    // over intermediate steps) and the herder position at segment end.
    struct Segment {
        bool active = false;
        StateId s = 0;
        ActionId a = 0;
        std::size_t target = 0;
        Vec2 x_tau_start;
        Vec2 command;
        std::uint64_t steps_done = 0;
    };
    std::vector<Segment> segment(n_herders);
    // CT herders pursue only until first contact; afterwards the tutor law
    // alone drives them (its coupling term vanishes outside rho_hat_tau).
    std::vector<char> ct_contacted(n_herders, 0);
    std::vector<Vec2> commands(n_herders);

    auto close_segment = [&](std::size_t j) {
        Segment& seg = segment[j];
        seg.active = false;
        const double r = reward(seg.x_tau_start, w.targets[seg.target], w.herders[j],
                                cfg.reward, cfg.env);
        const StateId s_next = encode_state(observe(w, j, seg.target, cfg.env), cfg.grid);
        q_update(table, seg.s, seg.a, r, s_next, cfg.learn);
        res.reward_sum += r;
    };

    for (std::uint64_t k = 0; k < steps; ++k) {
        // Sector re-allocation; selections reset so each herder re-picks
        // inside its new sector.
        if (k % sector_steps == 0) {
            sectors = assign_sectors(compute_com(w.targets), n_herders, w.t);
            selection = TargetSelection(n_herders);
        }

        for (std::size_t j = 0; j < n_herders; ++j) {
            selection.chased[j] = select_target(j, w, sectors, selection, cfg.env);
            Segment& seg = segment[j];
            if (!selection.chased[j].has_value()) {
                if (learning && seg.active) close_segment(j);
                commands[j] = {0.0, 0.0};
                continue;
            }
            const std::size_t ti = *selection.chased[j];
            const Vec2& x_tau = w.targets[ti];
            const Vec2& x_h = w.herders[j];
            const double dist = (x_tau - x_h).norm();

            if (j == 0) {
                if (dist <= cfg.tutor.rho_hat_tau) res.influence_contact = true;
                if (res.influence_contact)
                    res.post_contact_max_distance =
                        std::max(res.post_contact_max_distance, dist);
            }

            if (cfg.mode == Mode::CT) {
                if (dist <= cfg.tutor.rho_hat_tau) ct_contacted[j] = 1;
                commands[j] = ct_contacted[j]
                                  ? tutor_control(x_tau, x_h, cfg.tutor)
                                  : pursuit_control(x_tau, x_h, cfg.env.v_h_max);
                continue;
            }

            // A target switch or an elapsed period closes the held segment;
            // pursuit does not, it only overrides the command step-by-step,
            // so rewards always span a full decision period.
            if (seg.active && (seg.target != ti || seg.steps_done >= decision_steps_len))
                close_segment(j);

            if (dist > cfg.tutor.rho_hat_tau) {
                commands[j] = pursuit_control(x_tau, x_h, cfg.env.v_h_max);
                continue;
            }

            // Actions live in the goal frame: angle index 0 points from the
            // goal centre through the target (outward radial). Matching the
            // frame of the observation makes a learned action mean the same
            // manoeuvre at every bearing of the target around the goal.
            const double frame = bearing(x_tau - cfg.env.x_g);
            if (!seg.active) {
                const StateId s = encode_state(observe(w, j, ti, cfg.env), cfg.grid);
                std::pair<ActionId, PolicyBranch> choice;
                if (cfg.mode == Mode::QL) {
                    choice = policy_q(table, s, cfg.learn.epsilon, explore_rng[j]);
                } else {
                    const Vec2 u_rel =
                        rotated(tutor_control(x_tau, x_h, cfg.tutor), -frame);
                    choice = select_action_ctql(table, s, u_rel, cfg.grid,
                                                cfg.learn.epsilon, explore_rng[j]);
                }
                res.branch_counts[branch_index(choice.second)] += 1;
                res.decision_steps += 1;
                seg = {true, s, choice.first, ti, x_tau, action_value(choice.first, cfg.grid),
                       0};
            }
            // Re-rotate each step so the held action tracks the frame as the
            // target moves around the goal.
            commands[j] = rotated(seg.command, frame);
        }

        try {
            step_world(w, commands, cfg.env, noise_rng);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("step " + std::to_string(k) + ": " + e.what());
        }

        for (std::size_t j = 0; j < n_herders; ++j)
            if (segment[j].active) segment[j].steps_done += 1;

        record(w);
    }

    if (learning) {
        // Shared-table updates applied sequentially in herder order.
        for (std::size_t j = 0; j < n_herders; ++j)
            if (segment[j].active) close_segment(j);
    }

    const auto t_star = settling_time(res.target_radii, cfg.env.rho_g, cfg.env.ts);
    res.success =
        t_star.has_value() && *t_star <= cfg.trial_length_s - kContainmentMarginS;
    if (res.success) res.settling_time_s = t_star;
    return res;
}

}  // namespace ctql
