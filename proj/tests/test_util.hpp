#pragma once

#include "subsim/model.hpp"

#include <random>

namespace subsim::testing {

// Random valid configurations for property checks. Losses and photon
// counts stay in the regime every path can evaluate.
struct ConfigSampler {
    std::mt19937 rng;

    explicit ConfigSampler(unsigned seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    ModeParams arm(double max_gamma2 = 0.3) {
        double g2 = uniform(0.0, max_gamma2);
        double a2 = uniform(0.1, 1.0 - g2 - 0.05);
        return ModeParams::from_fractions(a2, g2);
    }

    Config config(double lambda_lo = 0.1, double lambda_hi = 0.8,
                  double max_gamma2 = 0.3) {
        Config cfg;
        cfg.lambda = uniform(lambda_lo, lambda_hi);
        cfg.arm = arm(max_gamma2);
        cfg.arm_prime = arm(max_gamma2);
        switch (uniform_int(0, 2)) {
            case 0:
                cfg.strategy = Strategy::pnrd(uniform_int(0, 2), uniform_int(0, 2));
                break;
            case 1:
                cfg.strategy = Strategy::apd(uniform_int(0, 1) == 1, uniform_int(0, 1) == 1);
                break;
            default:
                cfg.strategy = Strategy::pnrd(1, 1);
                break;
        }
        return cfg;
    }

    // Equal arms and a symmetric strategy: the persymmetric regime.
    Config symmetric_config(double lambda_lo = 0.1, double lambda_hi = 0.7,
                            double max_gamma2 = 0.3, bool allow_apd = true) {
        Config cfg;
        cfg.lambda = uniform(lambda_lo, lambda_hi);
        cfg.arm = arm(max_gamma2);
        cfg.arm_prime = cfg.arm;
        if (allow_apd && uniform_int(0, 1) == 1)
            cfg.strategy = Strategy::apd(true, true);
        else {
            int t = uniform_int(0, 2);
            cfg.strategy = Strategy::pnrd(t, t);
        }
        return cfg;
    }
};

} // namespace subsim::testing
