#include "subsim/analytic.hpp"
#include "subsim/blocks.hpp"
#include "subsim/entanglement.hpp"
#include "subsim/errors.hpp"
#include "subsim/evaluate.hpp"
#include "subsim/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace subsim;

namespace {

Config simple_config(double lambda, double a2, double g2, double a2p, double g2p,
                     Strategy st, int n_max = 10) {
    Config cfg;
    cfg.lambda = lambda;
    cfg.arm = ModeParams::from_fractions(a2, g2);
    cfg.arm_prime = ModeParams::from_fractions(a2p, g2p);
    cfg.strategy = st;
    cfg.truncation.n_max = n_max;
    return cfg;
}

} // namespace

TEST_CASE("state expansion basics") {
    Config vac = simple_config(0.0, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(0, 0));
    auto t0 = expand_state(vac, 6);
    CHECK(t0.arm[0][JointAmplitudeTable::index(0, 0, 0)] == 1.0);
    CHECK(t0.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));

    // No loss channel: every amplitude with lost photons vanishes.
    Config lossless = simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    auto t1 = expand_state(lossless, 6);
    for (int n = 0; n <= 6; ++n)
        for (int d = 0; d <= n; ++d)
            for (int l = 1; l + d <= n; ++l)
                CHECK(t1.arm[n][JointAmplitudeTable::index(n, d, l)] == 0.0);

    // Truncated normalisation is the geometric partial sum.
    Config lossy = simple_config(0.6, 0.6, 0.2, 0.7, 0.1, Strategy::pnrd(1, 1));
    auto t2 = expand_state(lossy, 8);
    double expected = 0.0;
    for (int n = 0; n <= 8; ++n)
        expected += (1.0 - 0.36) * std::pow(0.6, 2 * n);
    CHECK(t2.norm_squared() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("unconditioned oracle reproduces the squeezed baseline") {
    Config cfg = simple_config(0.3, 1.0, 0.0, 1.0, 0.0, Strategy::pnrd(0, 0));
    Metrics m = oracle_evaluate(cfg);
    CHECK(std::fabs(m.log_negativity - tmss_log_negativity(0.3)) <= 1e-6);
}

TEST_CASE("oracle density matches the closed-form probability") {
    Config cfg = simple_config(0.4, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    auto table = expand_state(cfg, 10);
    auto rho = conditioned_density(table, cfg.strategy);
    CHECK(rho.trace() == doctest::Approx(pnrd_probability(cfg, 1, 1)).epsilon(1e-6));
}

TEST_CASE("oracle agrees with the closed forms on loss-free counting") {
    Config cfg = simple_config(0.4, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    Metrics o = oracle_evaluate(cfg);
    Metrics closed = lossless_symmetric(cfg, 1);
    CHECK(std::fabs(o.log_negativity - closed.log_negativity) <= 1e-6);
    CHECK(std::fabs(o.probability - closed.probability) <= 1e-6);
}

TEST_CASE("oracle agrees with the block engine on a lossy click pattern") {
    Config cfg = simple_config(0.4, 0.7, 0.1, 0.7, 0.1, Strategy::apd(true, true));
    Metrics o = oracle_evaluate(cfg);
    Metrics b = evaluate_block_engine(cfg);
    CHECK(std::fabs(o.log_negativity - b.log_negativity) <= 1e-6);
    CHECK(std::fabs(o.probability - b.probability) <= 1e-6);
}

TEST_CASE("conditioned states are physical") {
    Config cfg = simple_config(0.45, 0.65, 0.15, 0.75, 0.1, Strategy::pnrd(1, 0));
    auto table = expand_state(cfg, 9);
    auto rho = conditioned_density(table, cfg.strategy);
    // Eigenvalues of the state itself are non-negative.
    for (double ev : symmetric_eigenvalues(rho)) CHECK(ev >= -1e-12);

    // The partial transpose is an involution.
    const int dim = 10;
    SymMatrix pt(dim * dim), ptpt(dim * dim);
    for (int e = 0; e < dim; ++e)
        for (int ep = 0; ep < dim; ++ep)
            for (int et = 0; et < dim; ++et)
                for (int etp = 0; etp < dim; ++etp)
                    pt.at(et * dim + ep, e * dim + etp) =
                        rho.at(e * dim + ep, et * dim + etp);
    for (int e = 0; e < dim; ++e)
        for (int ep = 0; ep < dim; ++ep)
            for (int et = 0; et < dim; ++et)
                for (int etp = 0; etp < dim; ++etp)
                    ptpt.at(et * dim + ep, e * dim + etp) =
                        pt.at(e * dim + ep, et * dim + etp);
    for (size_t k = 0; k < rho.a.size(); ++k) CHECK(ptpt.a[k] == rho.a[k]);
}

TEST_CASE("oracle rejects zero-probability conditioning") {
    Config cfg = simple_config(0.4, 1.0, 0.0, 1.0, 0.0, Strategy::pnrd(1, 1));
    CHECK_THROWS_AS(oracle_evaluate(cfg), impossible_event);
}

TEST_CASE("oracle cutoff guard") {
    Config cfg = simple_config(0.4, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    CHECK_THROWS_AS(expand_state(cfg, 40), std::domain_error);
}
