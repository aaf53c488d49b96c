#pragma once

#include <stdexcept>
#include <string>

#include "ctql/vec2.hpp"

namespace ctql {

struct LearningParams {
    double alpha = 0.9;    // learning rate
    double gamma = 0.8;    // discount factor
    double epsilon = 0.03; // exploration probability

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("alpha must be in [0,1]");
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::invalid_argument("gamma must be in [0,1]");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("epsilon must be in ]0,1[");
    }
};

struct TutorParams {
    double k_i = 2.0;         // velocity-feedforward gain, stability needs k_i > 1
    double k_p = 0.1;         // proportional gain [1/s]
    double gamma_model = 1.0; // coupling gain of the approximate target model [1/s]
    double rho_hat_tau = 1.0; // conservative influence-radius estimate [m]

    void validate() const {
        if (!(k_i > 1.0)) throw std::invalid_argument("k_i must be > 1");
        if (!(k_p > 0.0)) throw std::invalid_argument("k_p must be > 0");
        if (!(gamma_model > 0.0)) throw std::invalid_argument("gamma_model must be > 0");
        if (!(rho_hat_tau > 0.0)) throw std::invalid_argument("rho_hat_tau must be > 0");
    }
};

struct EnvParams {
    double beta1 = 1.0;          // herder-target coupling gain [m^3/s]
    double rho_tau = 3.0;        // true influence radius [m]
    double v_tau_max = 9.0;      // target speed cap [m/s]
    double v_h_max = 14.0;       // herder speed cap [m/s]
    double beta_max = 1.8;       // noise speed cap [m/s]
    double delta_t_noise = 1.0;  // noise refresh period [s]
    Vec2 x_g{0.0, 0.0};          // goal center
    double rho_g = 5.0;          // goal radius [m]
    double ts = 1e-3;            // integration step [s]

    void validate() const {
        if (!(beta1 > 0.0 && rho_tau > 0.0 && v_tau_max > 0.0 && v_h_max > 0.0))
            throw std::invalid_argument("environment gains and caps must be positive");
        if (!(beta_max >= 0.0)) throw std::invalid_argument("beta_max must be >= 0");
        if (!(rho_g > 0.0)) throw std::invalid_argument("rho_g must be > 0");
        if (!(ts > 0.0 && ts < delta_t_noise))
            throw std::invalid_argument("need 0 < ts < delta_t_noise");
    }
};

enum class SigmaVariant { PaperExact, Logistic };

struct RewardParams {
    double k1 = 1.0;
    double k2 = 0.5;
    double k_bar = 100.0; // sigmoid sharpness [1/m]
    SigmaVariant sigma_variant = SigmaVariant::Logistic;

    void validate() const {
        if (!(k1 > 0.0 && k2 >= 0.0 && k_bar > 0.0))
            throw std::invalid_argument("reward gains must be positive");
    }
};

inline SigmaVariant sigma_variant_from_string(const std::string& s) {
    if (s == "paper_exact") return SigmaVariant::PaperExact;
    if (s == "logistic") return SigmaVariant::Logistic;
    throw std::invalid_argument("unknown sigma_variant: " + s);
}

inline std::string to_string(SigmaVariant v) {
    return v == SigmaVariant::PaperExact ? "paper_exact" : "logistic";
}

}  // namespace ctql
