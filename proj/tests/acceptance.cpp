// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-5 are desk-scale campaign outcomes; criterion 6 is the
// randomized property bundle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ctql/harness.hpp"
#include "ctql/observe.hpp"
#include "ctql/reward.hpp"
#include "ctql/tutor.hpp"

using namespace ctql;

namespace {

int g_failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << name << " — "
              << detail << '\n';
    if (!ok) ++g_failures;
}

ExperimentConfig base_config(Mode mode, const std::string& grid, int n_train, int n_eval,
                             std::uint64_t seed = 1) {
    ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.grid_name = grid;
    cfg.n_training_trials = n_train;
    cfg.n_eval_trials = n_eval;
    cfg.seed = seed;
    return cfg;
}

// 1. CT baseline: 0% success over 20 trials; every trace shows the target
//    escaping the influence region after first contact.
void criterion_ct_failure() {
    const auto cfg = base_config(Mode::CT, "fine", 0, 20);
    const auto trained = run_training(cfg);
    const auto summary = run_evaluation(cfg, trained.table);
    bool all_escaped = true;
    for (const auto& t : summary.trials)
        if (!t.influence_contact || t.post_contact_max_distance <= cfg.env.rho_tau)
            all_escaped = false;
    std::ostringstream d;
    d << "success rate " << summary.success_rate * 100 << "% over 20 trials, escapes in all: "
      << (all_escaped ? "yes" : "no");
    report(1, "CT baseline failure", summary.success_rate == 0.0 && all_escaped, d.str());
}

// 2. CTQL success on both grids with <= 2 training trials.
void criterion_ctql_success() {
    bool ok = true;
    std::ostringstream d;
    for (const std::string& grid : {std::string("fine"), std::string("coarse")}) {
        const auto cfg = base_config(Mode::CTQL, grid, 2, 20);
        const auto trained = run_training(cfg);
        const auto summary = run_evaluation(cfg, trained.table);
        const bool grid_ok = summary.success_rate >= 0.9 && summary.mean_settling_time_s &&
                             *summary.mean_settling_time_s >= 5.0 &&
                             *summary.mean_settling_time_s <= 60.0;
        ok = ok && grid_ok;
        d << grid << ": " << summary.success_rate * 100 << "%, <t_s> = "
          << (summary.mean_settling_time_s ? std::to_string(*summary.mean_settling_time_s)
                                           : std::string("inf"))
          << " s; ";
    }
    report(2, "CTQL success (fine and coarse)", ok, d.str());
}

// 3. QL fine-grid failure proxy at a 50-trial budget.
void criterion_ql_failure() {
    const auto cfg = base_config(Mode::QL, "fine", 50, 20);
    const auto trained = run_training(cfg);
    const auto summary = run_evaluation(cfg, trained.table);
    std::ostringstream d;
    d << "success rate " << summary.success_rate * 100 << "% after 50 training trials";
    report(3, "QL fine-grid failure proxy", summary.success_rate <= 0.10, d.str());
}

// 4. Tutor stability: eigenvalues and idealized-model convergence.
void criterion_tutor_stability() {
    auto [l1, l2] = closed_loop_eigenvalues(2.0, 0.1);
    const double lo = std::min(l1.real(), l2.real());
    const double hi = std::max(l1.real(), l2.real());
    const bool eig_ok = std::abs(hi - (-0.1127)) < 1e-4 && std::abs(lo - (-0.8873)) < 1e-4 &&
                        std::abs(l1.imag()) < 1e-12 && std::abs(l2.imag()) < 1e-12;
    const TutorParams p{2.0, 0.1, 1.0, 1.0};
    const double final_r = idealized_loop_final_radius({30.0, 0.0}, {0.0, 0.0}, p, 1e-3, 100.0);
    std::ostringstream d;
    d << "eigenvalues " << hi << ", " << lo << "; ||x_tau(100 s)|| = " << final_r;
    report(4, "tutor stability analysis", eig_ok && final_r < 1e-2, d.str());
}

// 5. Multi-agent: M=2, N=15, 500 s; containment in >= 7 of 10 seeded runs.
void criterion_multi_agent() {
    int successes = 0;
    for (std::uint64_t run = 0; run < 10; ++run) {
        auto cfg = base_config(Mode::CTQL, "fine", 1, 1, 100 + run);
        cfg.n_herders = 2;
        cfg.n_targets = 15;
        cfg.trial_length_s = 500.0;
        const auto trained = run_training(cfg);
        const auto summary = run_evaluation(cfg, trained.table);
        if (summary.trials.front().success) ++successes;
    }
    std::ostringstream d;
    d << successes << "/10 runs contained all 15 targets through the final 5 s";
    report(5, "multi-agent qualitative reproduction", successes >= 7, d.str());
}

// 6. Property bundle (also covered in finer grain by the unit suite).
void criterion_properties() {
    bool ok = true;
    std::ostringstream d;

    auto need = [&](bool cond, const char* what) {
        if (!cond) {
            ok = false;
            d << what << " FAILED; ";
        }
    };

    // q_update vs hand oracle on 1e4 random tuples
    {
        constexpr std::uint32_t S = 64, A = 16;
        QTable t(S, A, 0);
        std::vector<double> shadow(S * A, 0.0);
        RngStream rng(1001);
        const LearningParams p{0.9, 0.8, 0.03};
        bool match = true;
        for (int i = 0; i < 10000; ++i) {
            const auto s = rng.uniform_index(S), a = rng.uniform_index(A),
                       sn = rng.uniform_index(S);
            const double r = rng.uniform(-1.0, 1.0);
            double mx = shadow[sn * A];
            for (std::uint32_t aa = 1; aa < A; ++aa) mx = std::max(mx, shadow[sn * A + aa]);
            const double expect = (1 - p.alpha) * shadow[s * A + a] + p.alpha * (r + p.gamma * mx);
            q_update(t, s, a, r, sn, p);
            shadow[s * A + a] = expect;
            if (std::abs(t.value(s, a) - expect) > 1e-12) match = false;
        }
        need(match, "q_update oracle equivalence");
    }

    // saturation norm/direction invariants
    {
        RngStream rng(1002);
        bool sat_ok = true;
        for (int i = 0; i < 5000; ++i) {
            const Vec2 v{rng.uniform(-40, 40), rng.uniform(-40, 40)};
            const Vec2 s = saturate(v, 9.0);
            if (s.norm() > 9.0 + 1e-12) sat_ok = false;
            if (v.norm() > 0 && std::abs(bearing(s) - bearing(v)) > 1e-12) sat_ok = false;
            if (v.norm() < 9.0 && !(s == v)) sat_ok = false;
        }
        need(sat_ok, "saturation invariants");
    }

    // Eq.-3-style branch predicate per decision
    {
        const Grid g = Grid::coarse();
        QTable t = QTable::for_grid(g);
        RngStream rng(1003), vals(1004);
        bool branch_ok = true;
        for (int i = 0; i < 3000; ++i) {
            const StateId s = vals.uniform_index(g.n_states());
            t.set(s, vals.uniform_index(g.n_actions()), vals.uniform(-1.0, 1.0));
            const auto [a, b] = select_action_ctql(t, s, {1.0, 1.0}, g, 0.0, rng);
            const bool q_side = b == PolicyBranch::GreedyQ || b == PolicyBranch::RandomQ;
            if (q_side != (t.max_value(s) > 0.0)) branch_ok = false;
        }
        need(branch_ok, "switching-policy branch predicate");
    }

    // nearest_action vs brute-force scan on 1e3 vectors
    {
        const Grid g = Grid::fine();
        RngStream rng(1005);
        bool na_ok = true;
        for (int i = 0; i < 1000; ++i) {
            const Vec2 v{rng.uniform(-20, 20), rng.uniform(-20, 20)};
            ActionId best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (ActionId a = 0; a < g.n_actions(); ++a) {
                const double dd = (action_value(a, g) - v).norm();
                if (dd < best_d) {
                    best_d = dd;
                    best = a;
                }
            }
            if (nearest_action(v, g) != best) na_ok = false;
        }
        need(na_ok, "nearest_action brute-force scan");
    }

    // sector partition over 1e4 random points
    {
        RngStream rng(1006);
        const auto a = assign_sectors({3.0, 4.0}, 5, 0.0);
        bool part_ok = true;
        for (int i = 0; i < 10000; ++i) {
            const Vec2 x{rng.uniform(-30, 30), rng.uniform(-30, 30)};
            if (a.sector_of(x) >= 5) part_ok = false;
        }
        need(part_ok, "sector partition");
    }

    // encode_state totality + state counts
    {
        const Grid coarse = Grid::coarse(), fine = Grid::fine();
        bool enc_ok = coarse.n_states() == 2160 && fine.n_states() == 500000;
        RngStream rng(1007);
        for (int i = 0; i < 10000; ++i) {
            Observation o;
            o.rel_distance = rng.uniform(0, 100);
            o.rel_angle = rng.uniform(-10, 10);
            o.herder_angle = rng.uniform(0, 3.2);
            o.target_speed = rng.uniform(0, 100);
            o.target_speed_angle = rng.uniform(-10, 10);
            if (encode_state(o, coarse) >= coarse.n_states()) enc_ok = false;
            if (encode_state(o, fine) >= fine.n_states()) enc_ok = false;
        }
        need(enc_ok, "encode_state totality and counts");
    }

    // epsilon branch frequency within 3 sigma over 1e5 draws
    {
        QTable t(4, 8, 0);
        RngStream rng(1008);
        const double eps = 0.03;
        int rnd = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            if (policy_q(t, 0, eps, rng).second == PolicyBranch::RandomQ) ++rnd;
        need(std::abs(static_cast<double>(rnd) / n - eps) < 0.005, "epsilon branch frequency");
    }

    // bit-identical rerun under a fixed seed
    {
        auto cfg = base_config(Mode::CTQL, "coarse", 1, 2, 77);
        cfg.trial_length_s = 20.0;
        const auto a = run_evaluation(cfg, run_training(cfg).table);
        const auto b = run_evaluation(cfg, run_training(cfg).table);
        bool same = a.success_rate == b.success_rate && a.trials.size() == b.trials.size();
        for (std::size_t i = 0; same && i < a.trials.size(); ++i)
            same = a.trials[i].reward_sum == b.trials[i].reward_sum &&
                   a.trials[i].target_radii == b.trials[i].target_radii;
        need(same, "bit-identical reruns");
    }

    report(6, "property suites", ok, ok ? "all property checks passed" : d.str());
}

}  // namespace

int main() {
    criterion_ct_failure();
    criterion_ctql_success();
    criterion_ql_failure();
    criterion_tutor_stability();
    criterion_multi_agent();
    criterion_properties();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
