#pragma once

#include "subsim/entanglement.hpp"
#include "subsim/model.hpp"

namespace subsim {

// Loss-combined shorthands: x = 1 - alpha^2 lambda, y = (alpha^2 + gamma^2)
// lambda per arm. Everything the closed forms need.
struct LossAliases {
    double x = 1.0;
    double y = 0.0;
    double y_prime = 0.0;

    static LossAliases from(const Config& cfg);
};

// Probability of counting exactly (t, t_prime) photons, any losses. Arms
// are swapped internally when t > t_prime.
double pnrd_probability(const Config& cfg, int t, int t_prime);

// Closed forms for loss-free symmetric counting (equal arms, t = t_prime).
Metrics lossless_symmetric(const Config& cfg, int t);

// Loss-free asymmetric counting: closed-form probability, log-negativity
// from the exact series (truncated at relative term 1e-15).
Metrics lossless_asymmetric(const Config& cfg, int t, int t_prime);

// Closed forms for symmetric counting with equal arms including equal
// losses.
Metrics lossy_symmetric(const Config& cfg, int t);

struct ApdProbabilities {
    double off_off = 0.0, off_on = 0.0, on_off = 0.0, on_on = 0.0;
    double sum() const { return off_off + off_on + on_off + on_on; }
};

// The four click-pattern probabilities; closed forms, any losses.
ApdProbabilities apd_probabilities(const Config& cfg);

// Reference fit of the rate-optimal alpha^2 against squeezing for
// single-photon symmetric subtraction, loss-free.
double empirical_fit_alpha_opt(double lambda);

// Reference fits of the rate-optimal settings against equal-arm loss for
// single-photon symmetric subtraction. The alpha fit tracks alpha^2.
struct LossyFit {
    double alpha_opt = 0.0;
    double lambda_opt = 0.0;
};
LossyFit empirical_fit_lossy(double gamma2);

} // namespace subsim
