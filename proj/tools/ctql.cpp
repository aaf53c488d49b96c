// Command-line driver: train/eval/compare campaigns, trajectory export, and
// the tutor stability report.

#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctql/harness.hpp"
#include "ctql/tutor.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::string> grid;
    std::optional<int> trials;
    std::string out_dir = "out";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "Config file (key = value, [section] headers)");
    cmd->add_option("--seed", o.seed, "Master RNG seed");
    cmd->add_option("--mode", o.mode, "QL | CT | CTQL");
    cmd->add_option("--grid", o.grid, "coarse | fine");
    cmd->add_option("--trials", o.trials, "Training trial count");
    cmd->add_option("--out", o.out_dir, "Output directory");
}

ctql::ExperimentConfig make_config(const CommonOpts& o) {
    ctql::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = ctql::load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.mode) cfg.mode = ctql::mode_from_string(*o.mode);
    if (o.grid) cfg.grid_name = *o.grid;
    if (o.trials) cfg.n_training_trials = *o.trials;
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os << content;
}

int cmd_train(const CommonOpts& o) {
    const auto cfg = make_config(o);
    fs::create_directories(o.out_dir);
    const auto trained = ctql::run_training(cfg);
    trained.table.save((fs::path(o.out_dir) / "qtable.bin").string());
    std::cout << "trained " << cfg.n_training_trials << " trial(s), mode "
              << ctql::to_string(cfg.mode) << ", grid " << cfg.grid_name << '\n';
    for (std::size_t n = 0; n < trained.log.size(); ++n) {
        const auto& l = trained.log[n];
        std::cout << "  trial " << n << ": reward_sum=" << l.reward_sum
                  << " decisions=" << l.decision_steps << " success=" << l.success << '\n';
    }
    std::cout << "q-table: " << trained.table.visited_states() << " visited states, "
              << trained.table.nonzero_entries() << " nonzero entries -> " << o.out_dir
              << "/qtable.bin\n";
    return 0;
}

int cmd_eval(const CommonOpts& o, const std::string& qtable_path) {
    const auto cfg = make_config(o);
    fs::create_directories(o.out_dir);
    ctql::QTable table = qtable_path.empty()
                             ? ctql::run_training(cfg).table
                             : ctql::QTable::load(qtable_path, cfg.make_grid());
    const auto summary = ctql::run_evaluation(cfg, table);
    write_file(fs::path(o.out_dir) / "summary.json",
               ctql::campaign_summary_json(summary, cfg));
    std::cout << ctql::to_string(summary.mode) << " (" << summary.grid_name
              << "): success rate " << summary.success_rate * 100.0 << "% over "
              << summary.trials.size() << " trials";
    if (summary.mean_settling_time_s)
        std::cout << ", <t_s> = " << *summary.mean_settling_time_s << " s";
    std::cout << "\nwrote " << o.out_dir << "/summary.json\n";
    return 0;
}

int cmd_compare(const CommonOpts& o, bool long_run) {
    const auto cfg = make_config(o);
    fs::create_directories(o.out_dir);
    const auto report = ctql::compare_modes(cfg, long_run);
    std::cout << report.to_text();
    write_file(fs::path(o.out_dir) / "summary.json", report.to_json());
    std::cout << "wrote " << o.out_dir << "/summary.json\n";
    return 0;
}

int cmd_export(const CommonOpts& o, const std::string& qtable_path, std::uint64_t decimation) {
    auto cfg = make_config(o);
    cfg.record_positions = true;
    fs::create_directories(o.out_dir);
    ctql::QTable table = qtable_path.empty()
                             ? ctql::run_training(cfg).table
                             : ctql::QTable::load(qtable_path, cfg.make_grid());
    const auto tc = cfg.trial_config();
    const std::uint64_t trial_index = 2'000'000; // dedicated export substream
    auto result =
        ctql::run_trial(ctql::initial_world(cfg, trial_index), table, tc, cfg.seed, trial_index);
    const auto csv = fs::path(o.out_dir) / "trajectories.csv";
    const auto svg = fs::path(o.out_dir) / "radial_plot.svg";
    ctql::export_trajectories(result, csv.string(), cfg.env.ts, decimation);
    ctql::write_radial_plot(result, svg.string(), cfg.env.rho_g, cfg.env.ts, decimation);
    std::cout << "trial success=" << result.success;
    if (result.settling_time_s) std::cout << " t_s=" << *result.settling_time_s << " s";
    std::cout << "\nwrote " << csv.string() << " and " << svg.string() << '\n';
    return 0;
}

int cmd_analyze_tutor(const CommonOpts& o) {
    const auto cfg = make_config(o);
    const auto [l1, l2] = ctql::closed_loop_eigenvalues(cfg.tutor.k_i, cfg.tutor.k_p);
    std::cout << "closed-loop eigenvalues (k_i=" << cfg.tutor.k_i << ", k_p=" << cfg.tutor.k_p
              << "): " << l1 << ", " << l2 << '\n';
    const bool stable = l1.real() < 0.0 && l2.real() < 0.0;
    std::cout << "stable: " << (stable ? "yes" : "no") << '\n';
    const double final_r = ctql::idealized_loop_final_radius(
        {30.0, 0.0}, {0.0, 0.0}, cfg.tutor, cfg.env.ts, 100.0);
    std::cout << "idealized-model convergence from ||x_tau(0)|| = 30: ||x_tau(100 s)|| = "
              << final_r << (final_r < 1e-2 ? "  (< 1e-2, converged)" : "  (not converged)")
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Control-tutored Q-learning herding simulator"};
    app.require_subcommand(1);

    CommonOpts train_o, eval_o, compare_o, export_o, analyze_o;
    std::string eval_qtable, export_qtable;
    bool long_run = false;
    std::uint64_t decimation = 100;

    add_common(app.add_subcommand("train", "Run training trials and save the Q-table"),
               train_o);
    auto* eval_cmd =
        app.add_subcommand("eval", "Evaluate a Q-table (trains first if none given)");
    add_common(eval_cmd, eval_o);
    eval_cmd->add_option("--qtable", eval_qtable, "Q-table file to load");
    auto* compare_cmd = app.add_subcommand("compare", "CT/QL/CTQL comparison over both grids");
    add_common(compare_cmd, compare_o);
    compare_cmd->add_flag("--long-run", long_run, "5000-trial QL baseline");
    auto* export_cmd = app.add_subcommand("export", "Run one trial and export trajectories");
    add_common(export_cmd, export_o);
    export_cmd->add_option("--qtable", export_qtable, "Q-table file to load");
    export_cmd->add_option("--decimation", decimation, "Steps between exported samples");
    add_common(app.add_subcommand("analyze-tutor",
                                  "Closed-loop eigenvalues and idealized convergence check"),
               analyze_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("train")) return cmd_train(train_o);
        if (app.got_subcommand("eval")) return cmd_eval(eval_o, eval_qtable);
        if (app.got_subcommand("compare")) return cmd_compare(compare_o, long_run);
        if (app.got_subcommand("export")) return cmd_export(export_o, export_qtable, decimation);
        if (app.got_subcommand("analyze-tutor")) return cmd_analyze_tutor(analyze_o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
