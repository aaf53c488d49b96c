// Benchmark: OpenMP-parallel evaluation campaign vs the serial reference.
// Both paths must produce identical summaries; this only measures wall time.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ctql/harness.hpp"

int main(int argc, char** argv) {
    ctql::ExperimentConfig cfg;
    cfg.mode = ctql::Mode::CTQL;
    cfg.grid_name = "fine";
    cfg.n_training_trials = 1;
    cfg.n_eval_trials = argc > 1 ? std::atoi(argv[1]) : 20;
    cfg.seed = 7;

    const auto trained = ctql::run_training(cfg);

    auto time_it = [&](auto&& fn, const char* label) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto summary = fn();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        std::cout << label << ": " << ms << " ms, success_rate = " << summary.success_rate
                  << '\n';
        return summary;
    };

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << '\n';
#else
    std::cout << "built without OpenMP\n";
#endif
    const auto serial =
        time_it([&] { return ctql::run_evaluation_serial(cfg, trained.table); }, "serial  ");
    const auto parallel =
        time_it([&] { return ctql::run_evaluation(cfg, trained.table); }, "parallel");

    const bool identical = serial.success_rate == parallel.success_rate &&
                           serial.mean_settling_time_s == parallel.mean_settling_time_s;
    std::cout << "results identical: " << (identical ? "yes" : "NO") << '\n';
    return identical ? 0 : 1;
}
