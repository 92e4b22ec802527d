#include "subsim/oracle.hpp"

#include "subsim/errors.hpp"
#include "subsim/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace subsim {

namespace {

using sf::log_factorial;

std::vector<double> arm_amplitudes(int n, const ModeParams& m) {
    // Flattened over (d, l) with d + l <= n.
    std::vector<double> amp(JointAmplitudeTable::index(n, n, 0) + 1, 0.0);
    double alpha = std::sqrt(m.alpha2), beta = std::sqrt(m.beta2), gamma = std::sqrt(m.gamma2);
    for (int d = 0; d <= n; ++d) {
        for (int l = 0; l + d <= n; ++l) {
            int e = n - d - l;
            if ((beta == 0.0 && d > 0) || (gamma == 0.0 && l > 0) || (alpha == 0.0 && e > 0))
                continue;
            double ln_mult = 0.5 * (log_factorial(n) - log_factorial(e) -
                                    log_factorial(d) - log_factorial(l));
            double v = std::exp(ln_mult);
            for (int k = 0; k < e; ++k) v *= alpha;
            for (int k = 0; k < d; ++k) v *= beta;
            for (int k = 0; k < l; ++k) v *= gamma;
            amp[JointAmplitudeTable::index(n, d, l)] = v;
        }
    }
    return amp;
}

bool admitted(const Strategy& s, int d, bool primed) {
    if (s.kind == Strategy::Kind::pnrd) return d == (primed ? s.t_prime : s.t);
    bool want_click = primed ? s.click_prime : s.click;
    return want_click ? d >= 1 : d == 0;
}

} // namespace

int JointAmplitudeTable::index(int n, int d, int l) {
    // Row-major over d = 0..n, l = 0..n-d: rows shrink by one as d grows.
    return d * (n + 1) - d * (d - 1) / 2 + l;
}

double JointAmplitudeTable::norm_squared() const {
    double s = 0.0;
    double w = 1.0 - lambda * lambda;
    for (int n = 0; n <= n_max; ++n) {
        double pn = w * std::pow(lambda, 2 * n);
        double a = 0.0, b = 0.0;
        for (double v : arm[n]) a += v * v;
        for (double v : arm_prime[n]) b += v * v;
        s += pn * a * b;
    }
    return s;
}

JointAmplitudeTable expand_state(const Config& cfg, int n_max) {
    if (n_max < 0) throw std::domain_error("expand_state: n_max must be non-negative");
    if (n_max > 24)
        throw std::domain_error("expand_state: n_max too large for the dense reference path");
    JointAmplitudeTable t;
    t.n_max = n_max;
    t.lambda = cfg.lambda;
    t.arm.reserve(n_max + 1);
    t.arm_prime.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        t.arm.push_back(arm_amplitudes(n, cfg.arm));
        t.arm_prime.push_back(arm_amplitudes(n, cfg.arm_prime));
    }
    return t;
}

SymMatrix conditioned_density(const JointAmplitudeTable& table, const Strategy& strategy) {
    const int dim = table.n_max + 1;
    SymMatrix rho(dim * dim);
    const double w = 1.0 - table.lambda * table.lambda;

    for (int n = 0; n <= table.n_max; ++n) {
        for (int nt = 0; nt <= table.n_max; ++nt) {
            double wn = w * std::pow(table.lambda, n + nt);
            // Unprimed arm: shared detected/lost counts (d, l).
            for (int d = 0; d <= n; ++d) {
                if (!admitted(strategy, d, false)) continue;
                for (int l = 0; l + d <= n; ++l) {
                    int e = n - d - l;
                    int et = nt - d - l;
                    if (et < 0) continue;
                    double va = table.arm[n][JointAmplitudeTable::index(n, d, l)] *
                                table.arm[nt][JointAmplitudeTable::index(nt, d, l)];
                    if (va == 0.0) continue;
                    for (int dp = 0; dp <= n; ++dp) {
                        if (!admitted(strategy, dp, true)) continue;
                        for (int lp = 0; lp + dp <= n; ++lp) {
                            int ep = n - dp - lp;
                            int etp = nt - dp - lp;
                            if (etp < 0) continue;
                            double vb =
                                table.arm_prime[n][JointAmplitudeTable::index(n, dp, lp)] *
                                table.arm_prime[nt][JointAmplitudeTable::index(nt, dp, lp)];
                            if (vb == 0.0) continue;
                            rho.at(e * dim + ep, et * dim + etp) += wn * va * vb;
                        }
                    }
                }
            }
        }
    }
    return rho;
}

Metrics oracle_metrics(const SymMatrix& rho, int n_max, double lambda) {
    const int dim = n_max + 1;
    double tr = rho.trace();
    if (tr <= 0.0) throw impossible_event("conditioned state has zero probability");

    SymMatrix pt(dim * dim);
    for (int e = 0; e < dim; ++e)
        for (int ep = 0; ep < dim; ++ep)
            for (int et = 0; et < dim; ++et)
                for (int etp = 0; etp < dim; ++etp)
                    pt.at(et * dim + ep, e * dim + etp) = rho.at(e * dim + ep, et * dim + etp);

    double norm = abs_eigenvalue_sum(pt);
    return metrics_from(tr, std::log2(norm / tr), lambda);
}

Metrics oracle_evaluate(const Config& cfg) {
    cfg.validate();
    auto table = expand_state(cfg, cfg.truncation.n_max);
    auto rho = conditioned_density(table, cfg.strategy);
    return oracle_metrics(rho, cfg.truncation.n_max, cfg.lambda);
}

} // namespace subsim
