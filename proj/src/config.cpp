#include "ctql/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ctql {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": " + v);
    }
    if (pos != v.size()) throw std::invalid_argument("bad numeric value for " + key + ": " + v);
    return d;
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer value for " + key + ": " + v);
    }
}

bool is_grid_field(const std::string& key) {
    static const char* fields[] = {"d_step",          "d_range",           "rel_angle_step",
                                   "herder_angle_step", "herder_angle_range", "speed_step",
                                   "speed_range",     "speed_angle_step",  "action_mag_step",
                                   "action_mag_max",  "action_angle_step"};
    for (const char* f : fields)
        if (key == f) return true;
    return false;
}

}  // namespace

Grid ExperimentConfig::make_grid() const {
    Grid g = Grid::from_name(grid_name, tutor.rho_hat_tau, env.v_h_max);
    for (const auto& [key, value] : grid_overrides) {
        if (key == "d_step") g.d_step = value;
        else if (key == "d_range") g.d_range = value;
        else if (key == "rel_angle_step") g.rel_angle_step = value;
        else if (key == "herder_angle_step") g.herder_angle_step = value;
        else if (key == "herder_angle_range") g.herder_angle_range = value;
        else if (key == "speed_step") g.speed_step = value;
        else if (key == "speed_range") g.speed_range = value;
        else if (key == "speed_angle_step") g.speed_angle_step = value;
        else if (key == "action_mag_step") g.action_mag_step = value;
        else if (key == "action_mag_max") g.action_mag_max = value;
        else if (key == "action_angle_step") g.action_angle_step = value;
    }
    g.validate();
    return g;
}

TrialConfig ExperimentConfig::trial_config() const {
    TrialConfig tc;
    tc.mode = mode;
    tc.grid = make_grid();
    tc.env = env;
    tc.learn = learn;
    tc.tutor = tutor;
    tc.reward = reward;
    tc.trial_length_s = trial_length_s;
    tc.sector_period_s = sector_period_s;
    tc.decision_period_s = decision_period_s;
    tc.record_positions = record_positions;
    return tc;
}

void ExperimentConfig::validate() const {
    env.validate();
    learn.validate();
    tutor.validate();
    reward.validate();
    make_grid();
    if (n_training_trials < 0 || n_eval_trials < 0)
        throw std::invalid_argument("trial counts must be non-negative");
    if (!(trial_length_s > 0.0)) throw std::invalid_argument("trial_length_s must be positive");
    if (n_herders == 0 || n_targets == 0)
        throw std::invalid_argument("need at least one herder and one target");
    if (!(sector_period_s > 0.0))
        throw std::invalid_argument("sector_period_s must be positive");
    if (!(decision_period_s >= env.ts))
        throw std::invalid_argument("decision_period_s must be at least ts");
    if (!(tutor.rho_hat_tau <= env.rho_tau))
        throw std::invalid_argument("rho_hat_tau must not exceed rho_tau");
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int line_no = 0;

    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(is, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "harness" && section != "environment" && section != "core_rl" &&
                section != "tutor" && section != "reward" && section != "discretization" &&
                section != "cooperation")
                fail("unknown section: " + section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail("expected key = value");

        if (section == "harness") {
            if (key == "mode") cfg.mode = mode_from_string(value);
            else if (key == "grid") cfg.grid_name = value;
            else if (key == "n_training_trials") cfg.n_training_trials = static_cast<int>(parse_u64(value, key));
            else if (key == "n_eval_trials") cfg.n_eval_trials = static_cast<int>(parse_u64(value, key));
            else if (key == "trial_length_s") cfg.trial_length_s = parse_double(value, key);
            else if (key == "seed") cfg.seed = parse_u64(value, key);
            else if (key == "record_positions") cfg.record_positions = (value == "true" || value == "1");
            else fail("unknown key in [harness]: " + key);
        } else if (section == "environment") {
            if (key == "beta1") cfg.env.beta1 = parse_double(value, key);
            else if (key == "rho_tau") cfg.env.rho_tau = parse_double(value, key);
            else if (key == "v_tau_max") cfg.env.v_tau_max = parse_double(value, key);
            else if (key == "v_h_max") cfg.env.v_h_max = parse_double(value, key);
            else if (key == "beta_max") cfg.env.beta_max = parse_double(value, key);
            else if (key == "delta_t_noise") cfg.env.delta_t_noise = parse_double(value, key);
            else if (key == "x_g_x") cfg.env.x_g.x = parse_double(value, key);
            else if (key == "x_g_y") cfg.env.x_g.y = parse_double(value, key);
            else if (key == "rho_g") cfg.env.rho_g = parse_double(value, key);
            else if (key == "ts") cfg.env.ts = parse_double(value, key);
            else fail("unknown key in [environment]: " + key);
        } else if (section == "core_rl") {
            if (key == "alpha") cfg.learn.alpha = parse_double(value, key);
            else if (key == "gamma") cfg.learn.gamma = parse_double(value, key);
            else if (key == "epsilon") cfg.learn.epsilon = parse_double(value, key);
            else if (key == "decision_period_s")
                cfg.decision_period_s = parse_double(value, key);
            else fail("unknown key in [core_rl]: " + key);
        } else if (section == "tutor") {
            if (key == "k_i") cfg.tutor.k_i = parse_double(value, key);
            else if (key == "k_p") cfg.tutor.k_p = parse_double(value, key);
            else if (key == "gamma_model") cfg.tutor.gamma_model = parse_double(value, key);
            else if (key == "rho_hat_tau") cfg.tutor.rho_hat_tau = parse_double(value, key);
            else fail("unknown key in [tutor]: " + key);
        } else if (section == "reward") {
            if (key == "k1") cfg.reward.k1 = parse_double(value, key);
            else if (key == "k2") cfg.reward.k2 = parse_double(value, key);
            else if (key == "k_bar") cfg.reward.k_bar = parse_double(value, key);
            else if (key == "sigma_variant") cfg.reward.sigma_variant = sigma_variant_from_string(value);
            else fail("unknown key in [reward]: " + key);
        } else if (section == "discretization") {
            if (key == "grid") cfg.grid_name = value;
            else if (is_grid_field(key)) cfg.grid_overrides[key] = parse_double(value, key);
            else fail("unknown key in [discretization]: " + key);
        } else if (section == "cooperation") {
            if (key == "n_herders") cfg.n_herders = parse_u64(value, key);
            else if (key == "n_targets") cfg.n_targets = parse_u64(value, key);
            else if (key == "sector_period_s") cfg.sector_period_s = parse_double(value, key);
            else fail("unknown key in [cooperation]: " + key);
        } else {
            fail("key outside any section: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace ctql
