#include "subsim/analytic.hpp"

#include "subsim/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace subsim {

namespace {

using sf::jacobi;
using sf::legendre;
using sf::log_factorial;

double pow_int(double base, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

} // namespace

LossAliases LossAliases::from(const Config& cfg) {
    LossAliases la;
    la.x = 1.0 - cfg.arm.alpha2 * cfg.lambda;
    la.y = (cfg.arm.alpha2 + cfg.arm.gamma2) * cfg.lambda;
    la.y_prime = (cfg.arm_prime.alpha2 + cfg.arm_prime.gamma2) * cfg.lambda;
    return la;
}

double pnrd_probability(const Config& cfg, int t, int t_prime) {
    if (t < 0 || t_prime < 0)
        throw std::domain_error("photon counts must be non-negative");
    const ModeParams& a = (t <= t_prime) ? cfg.arm : cfg.arm_prime;
    const ModeParams& b = (t <= t_prime) ? cfg.arm_prime : cfg.arm;
    if (t > t_prime) std::swap(t, t_prime);

    double lam = cfg.lambda;
    double ag = a.alpha2 + a.gamma2;
    double agp = b.alpha2 + b.gamma2;
    double yy = ag * agp * lam * lam;
    double z = (1.0 + yy) / (1.0 - yy);
    return (1.0 - lam * lam) * pow_int(lam, 2 * t_prime) * pow_int(b.beta2, t_prime) *
           pow_int(a.beta2, t) * pow_int(ag, t_prime - t) /
           pow_int(1.0 - yy, t_prime + 1) * jacobi(t, t_prime - t, 0, z);
}

Metrics lossless_symmetric(const Config& cfg, int t) {
    if (!cfg.lossless())
        throw std::domain_error("lossless_symmetric: configuration has loss");
    if (!cfg.equal_arms())
        throw std::domain_error("lossless_symmetric: arms differ");
    double lam = cfg.lambda;
    double la = lam * cfg.arm.alpha2;
    double z = (1.0 + la * la) / (1.0 - la * la);
    double en = std::log2(pow_int((1.0 + la) / (1.0 - la), t + 1) / legendre(t, z));
    return metrics_from(pnrd_probability(cfg, t, t), en, lam);
}

Metrics lossless_asymmetric(const Config& cfg, int t, int t_prime) {
    if (!cfg.lossless())
        throw std::domain_error("lossless_asymmetric: configuration has loss");
    const ModeParams& a = (t <= t_prime) ? cfg.arm : cfg.arm_prime;
    const ModeParams& b = (t <= t_prime) ? cfg.arm_prime : cfg.arm;
    double P = pnrd_probability(cfg, t, t_prime);
    if (t > t_prime) std::swap(t, t_prime);

    double lam = cfg.lambda;
    double aap = std::sqrt(a.alpha2 * b.alpha2) * lam;
    double a2a2p = a.alpha2 * b.alpha2 * lam * lam;
    double z = (1.0 + a2a2p) / (1.0 - a2a2p);

    // sum_i (lambda alpha alpha')^i (i+t')! / sqrt(i! (i+t'-t)! t! t'!),
    // accumulated relative to the leading term.
    double series = 0.0;
    if (aap == 0.0) {
        series = std::exp(log_factorial(t_prime) -
                          0.5 * (log_factorial(t_prime - t) + log_factorial(t) +
                                 log_factorial(t_prime)));
    } else {
        double ln_aap = std::log(aap);
        double ln0 = log_factorial(t_prime) -
                     0.5 * (log_factorial(t_prime - t) + log_factorial(t) +
                            log_factorial(t_prime));
        double term = 1.0;
        series = 1.0;
        for (int i = 1; i < 200000; ++i) {
            double ln_ratio = ln_aap + std::log(static_cast<double>(i + t_prime)) -
                              0.5 * (std::log(static_cast<double>(i)) +
                                     std::log(static_cast<double>(i + t_prime - t)));
            term *= std::exp(ln_ratio);
            series += term;
            if (term < 1e-15 * series) break;
        }
        series = std::exp(ln0 + std::log(series));
    }
    double en = std::log2(pow_int(1.0 - a2a2p, t_prime + 1) / jacobi(t, t_prime - t, 0, z)) +
                2.0 * std::log2(series);
    return metrics_from(P, en, lam);
}

Metrics lossy_symmetric(const Config& cfg, int t) {
    if (!cfg.equal_arms())
        throw std::domain_error("lossy_symmetric: arms differ");
    double lam = cfg.lambda;
    double x = 1.0 - cfg.arm.alpha2 * lam;
    double y = (cfg.arm.alpha2 + cfg.arm.gamma2) * lam;
    double g4l2 = cfg.arm.gamma2 * cfg.arm.gamma2 * lam * lam;
    double zx = (x * x + g4l2) / (x * x - g4l2);
    double zy = (1.0 + y * y) / (1.0 - y * y);
    double en = std::log2(pow_int((1.0 - y * y) / (x * x - g4l2), t + 1) *
                          legendre(t, zx) / legendre(t, zy));
    double P = (1.0 - lam * lam) * pow_int(cfg.arm.beta2, 2 * t) * pow_int(lam, 2 * t) /
               pow_int(1.0 - y * y, t + 1) * legendre(t, zy);
    return metrics_from(P, en, lam);
}

ApdProbabilities apd_probabilities(const Config& cfg) {
    double lam = cfg.lambda;
    auto al = LossAliases::from(cfg);
    double y = al.y, yp = al.y_prime;
    ApdProbabilities p;
    double one_minus = 1.0 - lam * lam;
    p.off_off = one_minus / (1.0 - y * yp);
    p.off_on = one_minus * y * (lam - yp) / ((1.0 - y * lam) * (1.0 - y * yp));
    p.on_off = one_minus * yp * (lam - y) / ((1.0 - yp * lam) * (1.0 - y * yp));
    p.on_on = (y - lam) * (yp - lam) * (1.0 - y * yp * lam * lam) /
              ((1.0 - y * lam) * (1.0 - yp * lam) * (1.0 - y * yp));
    return p;
}

double empirical_fit_alpha_opt(double lambda) {
    double u = lambda - 1.0;
    return 0.238 * u * u + 0.576 * u + 1.0;
}

LossyFit empirical_fit_lossy(double gamma2) {
    LossyFit f;
    double g = gamma2 + 0.1;
    f.alpha_opt = std::exp(-38.1 * g) - 0.6 * gamma2 + 0.8;
    f.lambda_opt = std::exp(-107.1 * g * g) + std::exp(-2.8 * g) - 0.2;
    return f;
}

} // namespace subsim
