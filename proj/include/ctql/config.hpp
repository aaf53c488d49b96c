#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ctql/grid.hpp"
#include "ctql/trial.hpp"

namespace ctql {

// Full experiment description; defaults reproduce the reference parameter set.
struct ExperimentConfig {
    Mode mode = Mode::CTQL;
    std::string grid_name = "fine";
    int n_training_trials = 2;
    int n_eval_trials = 20;
    double trial_length_s = 100.0;
    std::uint64_t seed = 1;
    std::size_t n_herders = 1;
    std::size_t n_targets = 1;
    double sector_period_s = 10.0;
    // Control period of the learning policies (see TrialConfig).
    double decision_period_s = 2.0;
    bool record_positions = false;

    EnvParams env;
    LearningParams learn;
    TutorParams tutor;
    RewardParams reward;

    // Individual step-size overrides applied on top of the named grid.
    std::map<std::string, double> grid_overrides;

    Grid make_grid() const;
    TrialConfig trial_config() const;
    void validate() const;
};

// Flat key-value config file with [section] headers mirroring the module
// names; unknown sections or keys are errors.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

}  // namespace ctql
