#include "ctql/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ctql/rng.hpp"

namespace ctql {

namespace {

// Eval trials draw from substreams disjoint from training trials.
constexpr std::uint64_t kEvalTrialOffset = 1'000'000;

constexpr double kInitRadiusMin = 15.0;
constexpr double kInitRadiusMax = 30.0;
constexpr double kHerderOffsetSpan = 2.0;

double tutor_fraction(const std::vector<TrialResult>& trials) {
    std::uint64_t tutor = 0;
    std::uint64_t total = 0;
    for (const auto& t : trials) {
        tutor += t.branch_counts[static_cast<std::size_t>(PolicyBranch::TutorNearest)] +
                 t.branch_counts[static_cast<std::size_t>(PolicyBranch::TutorRandom)];
        total += t.decision_steps;
    }
    return total == 0 ? 0.0 : static_cast<double>(tutor) / static_cast<double>(total);
}

CampaignSummary summarize(const ExperimentConfig& cfg, std::vector<TrialResult> trials) {
    CampaignSummary s;
    s.mode = cfg.mode;
    s.grid_name = cfg.grid_name;
    std::size_t successes = 0;
    double settle_sum = 0.0;
    for (const auto& t : trials) {
        if (t.success) {
            ++successes;
            settle_sum += *t.settling_time_s;
        }
    }
    s.success_rate = trials.empty() ? 0.0
                                    : static_cast<double>(successes) /
                                          static_cast<double>(trials.size());
    if (successes > 0) s.mean_settling_time_s = settle_sum / static_cast<double>(successes);
    s.trials = std::move(trials);
    return s;
}

std::vector<TrialResult> eval_trials(const ExperimentConfig& cfg, const QTable& table,
                                     bool parallel) {
    const TrialConfig tc = cfg.trial_config();
    std::vector<TrialResult> results(static_cast<std::size_t>(cfg.n_eval_trials));
    std::exception_ptr err;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < cfg.n_eval_trials; ++i) {
        try {
            const std::uint64_t trial_index = kEvalTrialOffset + static_cast<std::uint64_t>(i);
            QTable local = table; // learning stays on but is not carried across trials
            results[static_cast<std::size_t>(i)] =
                run_trial(initial_world(cfg, trial_index), local, tc, cfg.seed, trial_index);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return results;
}

}  // namespace

WorldState initial_world(const ExperimentConfig& cfg, std::uint64_t trial_index) {
    RngStream ic(cfg.seed, trial_index, StreamKind::InitialConditions);
    WorldState w;
    w.targets.reserve(cfg.n_targets);
    for (std::size_t i = 0; i < cfg.n_targets; ++i) {
        const double r = ic.uniform(kInitRadiusMin, kInitRadiusMax);
        const double a = ic.uniform(0.0, 2.0 * M_PI);
        w.targets.push_back(cfg.env.x_g + from_polar(r, a));
    }
    w.herders.reserve(cfg.n_herders);
    for (std::size_t j = 0; j < cfg.n_herders; ++j) {
        const Vec2& anchor = w.targets[j % cfg.n_targets];
        const double d = ic.uniform(cfg.tutor.rho_hat_tau,
                                    cfg.tutor.rho_hat_tau + kHerderOffsetSpan);
        const double a = ic.uniform(0.0, 2.0 * M_PI);
        w.herders.push_back(anchor + from_polar(d, a));
    }
    w.target_velocities.assign(cfg.n_targets, Vec2{});
    w.noise.assign(cfg.n_targets, NoisePhase{});
    return w;
}

TrainingResult run_training(const ExperimentConfig& cfg) {
    cfg.validate();
    const TrialConfig tc = cfg.trial_config();
    TrainingResult out{QTable::for_grid(tc.grid), {}};
    out.log.reserve(static_cast<std::size_t>(cfg.n_training_trials));
    for (int n = 0; n < cfg.n_training_trials; ++n) {
        const auto trial_index = static_cast<std::uint64_t>(n);
        TrialResult r;
        try {
            r = run_trial(initial_world(cfg, trial_index), out.table, tc, cfg.seed,
                          trial_index);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("training trial " + std::to_string(n) + ": " + e.what());
        }
        out.log.push_back({r.reward_sum, r.branch_counts, r.decision_steps, r.success,
                           r.settling_time_s});
    }
    return out;
}

CampaignSummary run_evaluation(const ExperimentConfig& cfg, const QTable& table) {
    cfg.validate();
    if (table.grid_fingerprint() != cfg.make_grid().fingerprint())
        throw std::invalid_argument("q-table grid fingerprint does not match config");
    return summarize(cfg, eval_trials(cfg, table, true));
}

CampaignSummary run_evaluation_serial(const ExperimentConfig& cfg, const QTable& table) {
    cfg.validate();
    if (table.grid_fingerprint() != cfg.make_grid().fingerprint())
        throw std::invalid_argument("q-table grid fingerprint does not match config");
    return summarize(cfg, eval_trials(cfg, table, false));
}

ComparisonReport compare_modes(const ExperimentConfig& cfg_base, bool long_run) {
    ComparisonReport report;
    for (const std::string& grid : {std::string("fine"), std::string("coarse")}) {
        for (Mode mode : {Mode::CT, Mode::QL, Mode::CTQL}) {
            ExperimentConfig cfg = cfg_base;
            cfg.mode = mode;
            cfg.grid_name = grid;
            if (mode == Mode::CT) cfg.n_training_trials = 0;
            if (mode == Mode::QL && long_run) cfg.n_training_trials = 5000;
            TrainingResult trained = run_training(cfg);
            CampaignSummary summary = run_evaluation(cfg, trained.table);
            report.rows.push_back({mode, grid, cfg.n_training_trials, summary.success_rate,
                                   summary.mean_settling_time_s,
                                   tutor_fraction(summary.trials)});
        }
    }
    return report;
}

std::string ComparisonReport::to_text() const {
    std::ostringstream os;
    os << std::left << std::setw(6) << "mode" << std::setw(8) << "grid" << std::setw(10)
       << "n_train" << std::setw(14) << "success_rate" << std::setw(12) << "<t_s> [s]"
       << std::setw(14) << "tutor_frac" << '\n';
    for (const auto& r : rows) {
        os << std::left << std::setw(6) << to_string(r.mode) << std::setw(8) << r.grid_name
           << std::setw(10) << r.n_training_trials << std::setw(14) << std::fixed
           << std::setprecision(2) << r.success_rate;
        if (r.mean_settling_time_s)
            os << std::setw(12) << std::setprecision(1) << *r.mean_settling_time_s;
        else
            os << std::setw(12) << "inf";
        os << std::setw(14) << std::setprecision(3) << r.tutor_branch_fraction << '\n';
    }
    return os.str();
}

std::string ComparisonReport::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row{{"mode", to_string(r.mode)},
                           {"grid", r.grid_name},
                           {"n_training_trials", r.n_training_trials},
                           {"success_rate", r.success_rate},
                           {"tutor_branch_fraction", r.tutor_branch_fraction}};
        if (r.mean_settling_time_s)
            row["mean_settling_time_s"] = *r.mean_settling_time_s;
        else
            row["mean_settling_time_s"] = nullptr;
        j.push_back(row);
    }
    return j.dump(2);
}

void export_trajectories(const TrialResult& result, const std::string& path, double ts,
                         std::uint64_t decimation) {
    if (decimation == 0) throw std::invalid_argument("decimation must be positive");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "t,agent_kind,agent_id,x,y,r\n";
    os << std::setprecision(17);

    auto dump = [&](const std::vector<std::vector<Vec2>>& agents, const char* kind) {
        for (std::size_t id = 0; id < agents.size(); ++id) {
            const auto& trace = agents[id];
            for (std::size_t k = 0; k < trace.size(); ++k) {
                if (k % decimation != 0 && k + 1 != trace.size()) continue;
                const Vec2& x = trace[k];
                os << static_cast<double>(k) * ts << ',' << kind << ',' << id << ',' << x.x
                   << ',' << x.y << ',' << x.norm() << '\n';
            }
        }
    };
    dump(result.target_positions, "target");
    dump(result.herder_positions, "herder");
    if (!os) throw std::runtime_error("write failed: " + path);
}

void write_radial_plot(const TrialResult& result, const std::string& path, double rho_g,
                       double ts, std::uint64_t decimation) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);

    const double width = 900, height = 520;
    const double ml = 60, mr = 20, mt = 20, mb = 45;
    const double t_max = static_cast<double>(result.steps) * ts;
    double r_max = rho_g * 1.2;
    for (const auto& tr : result.target_radii)
        for (double r : tr) r_max = std::max(r_max, r);
    for (const auto& tr : result.herder_radii)
        for (double r : tr) r_max = std::max(r_max, r);

    auto px = [&](double t) { return ml + (width - ml - mr) * (t_max > 0 ? t / t_max : 0.0); };
    auto py = [&](double r) { return height - mb - (height - mt - mb) * (r / r_max); };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    auto polyline = [&](const std::vector<double>& trace, const char* color) {
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1' points='";
        for (std::size_t k = 0; k < trace.size(); ++k) {
            if (k % decimation != 0 && k + 1 != trace.size()) continue;
            os << px(static_cast<double>(k) * ts) << ',' << py(trace[k]) << ' ';
        }
        os << "'/>\n";
    };
    for (const auto& tr : result.target_radii) polyline(tr, "red");
    for (const auto& tr : result.herder_radii) polyline(tr, "black");
    os << "<line x1='" << px(0) << "' y1='" << py(rho_g) << "' x2='" << px(t_max) << "' y2='"
       << py(rho_g) << "' stroke='green' stroke-width='2'/>\n";
    // axes
    os << "<line x1='" << ml << "' y1='" << py(0) << "' x2='" << px(t_max) << "' y2='" << py(0)
       << "' stroke='gray'/>\n<line x1='" << ml << "' y1='" << py(0) << "' x2='" << ml
       << "' y2='" << mt << "' stroke='gray'/>\n";
    os << "<text x='" << width / 2 << "' y='" << height - 10
       << "' font-size='14'>t [s]</text>\n";
    os << "<text x='12' y='" << height / 2
       << "' font-size='14' transform='rotate(-90 12," << height / 2
       << ")'>radial distance [m]</text>\n";
    os << "<text x='" << px(t_max) - 60 << "' y='" << py(rho_g) - 6
       << "' font-size='12' fill='green'>rho_g</text>\n";
    os << "</svg>\n";
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string campaign_summary_json(const CampaignSummary& summary,
                                  const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["mode"] = to_string(summary.mode);
    j["grid"] = summary.grid_name;
    j["seed"] = cfg.seed;
    j["n_training_trials"] = cfg.n_training_trials;
    j["n_eval_trials"] = cfg.n_eval_trials;
    j["n_herders"] = cfg.n_herders;
    j["n_targets"] = cfg.n_targets;
    j["trial_length_s"] = cfg.trial_length_s;
    j["success_rate"] = summary.success_rate;
    if (summary.mean_settling_time_s)
        j["mean_settling_time_s"] = *summary.mean_settling_time_s;
    else
        j["mean_settling_time_s"] = nullptr;
    j["trials"] = nlohmann::json::array();
    static const char* branch_names[] = {"greedy_q", "random_q", "tutor_nearest",
                                         "tutor_random"};
    for (const auto& t : summary.trials) {
        nlohmann::json jt;
        jt["success"] = t.success;
        if (t.settling_time_s)
            jt["settling_time_s"] = *t.settling_time_s;
        else
            jt["settling_time_s"] = nullptr;
        jt["steps"] = t.steps;
        jt["reward_sum"] = t.reward_sum;
        jt["decision_steps"] = t.decision_steps;
        for (std::size_t b = 0; b < 4; ++b) jt["branches"][branch_names[b]] = t.branch_counts[b];
        j["trials"].push_back(jt);
    }
    return j.dump(2);
}

}  // namespace ctql
