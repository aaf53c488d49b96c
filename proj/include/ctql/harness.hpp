#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctql/config.hpp"
#include "ctql/qtable.hpp"
#include "ctql/trial.hpp"

namespace ctql {

// Random initial conditions: targets uniformly at radius [15,30] m with
// uniform bearing; herder j at distance [rho_hat, rho_hat+2] from target
// (j mod N) at uniform bearing.
WorldState initial_world(const ExperimentConfig& cfg, std::uint64_t trial_index);

struct TrainingTrialLog {
    double reward_sum = 0.0;
    std::array<std::uint64_t, 4> branch_counts{};
    std::uint64_t decision_steps = 0;
    bool success = false;
    std::optional<double> settling_time_s;
};

struct TrainingResult {
    QTable table;
    std::vector<TrainingTrialLog> log;
};

// Sequential training trials carrying one Q-table forward.
TrainingResult run_training(const ExperimentConfig& cfg);

struct CampaignSummary {
    Mode mode = Mode::CTQL;
    std::string grid_name;
    double success_rate = 0.0;
    std::optional<double> mean_settling_time_s; // over successful trials only
    std::vector<TrialResult> trials;
};

// Evaluation trials are independent (each one learns on its own copy of the
// trained table), so the parallel variant distributes them over OpenMP
// threads and is bit-identical to the serial reference.
CampaignSummary run_evaluation(const ExperimentConfig& cfg, const QTable& table);
CampaignSummary run_evaluation_serial(const ExperimentConfig& cfg, const QTable& table);

struct ModeReport {
    Mode mode;
    std::string grid_name;
    int n_training_trials = 0;
    double success_rate = 0.0;
    std::optional<double> mean_settling_time_s;
    double tutor_branch_fraction = 0.0; // over eval decision steps
};

struct ComparisonReport {
    std::vector<ModeReport> rows;

    std::string to_text() const;
    std::string to_json() const;
};

// Table-style CT/QL/CTQL comparison over both grids under shared seeds.
// long_run switches QL to the 5000-trial coarse-budget baseline.
ComparisonReport compare_modes(const ExperimentConfig& cfg_base, bool long_run = false);

// CSV `t,agent_kind,agent_id,x,y,r`; needs record_positions.
void export_trajectories(const TrialResult& result, const std::string& path, double ts,
                         std::uint64_t decimation = 100);

// Radial distance vs time for every agent, goal radius as a horizontal line.
void write_radial_plot(const TrialResult& result, const std::string& path, double rho_g,
                       double ts, std::uint64_t decimation = 100);

std::string campaign_summary_json(const CampaignSummary& summary,
                                  const ExperimentConfig& cfg);

}  // namespace ctql
