#include "subsim/analytic.hpp"
#include "subsim/blocks.hpp"
#include "subsim/entanglement.hpp"
#include "subsim/errors.hpp"
#include "subsim/special_functions.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace subsim;
using subsim::testing::ConfigSampler;

namespace {

Config simple_config(double lambda, double a2, double g2, double a2p, double g2p,
                     Strategy st) {
    Config cfg;
    cfg.lambda = lambda;
    cfg.arm = ModeParams::from_fractions(a2, g2);
    cfg.arm_prime = ModeParams::from_fractions(a2p, g2p);
    cfg.strategy = st;
    return cfg;
}

} // namespace

TEST_CASE("coefficient of the single-photon symmetric block") {
    // K=2, i=j=1, counting one photon per arm, loss-free: the surviving
    // term is lambda^4 alpha^4 beta^4 (2!)^2 = 0.0064 at lambda=0.5,
    // alpha^2=0.8.
    Config cfg = simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    double c = coefficient(2, 1, 1, cfg, DetectionRange::fixed(1), DetectionRange::fixed(1));
    CHECK(c == doctest::Approx(0.0064).epsilon(1e-13));
}

TEST_CASE("coefficient rejects out-of-block indices") {
    Config cfg = simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    CHECK_THROWS_AS(coefficient(2, 3, 0, cfg, DetectionRange::fixed(1),
                                DetectionRange::fixed(1)),
                    std::domain_error);
    CHECK_THROWS_AS(coefficient(2, 0, -1, cfg, DetectionRange::fixed(1),
                                DetectionRange::fixed(1)),
                    std::domain_error);
}

TEST_CASE("vacuum input produces the bare zero block") {
    Config cfg = simple_config(0.0, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(0, 0));
    auto bs = assemble(cfg);
    REQUIRE(bs.blocks.size() == 1);
    REQUIRE(bs.blocks[0].n == 1);
    CHECK(bs.blocks[0].at(0, 0) == 1.0);
    CHECK(bs.prefactor == 1.0);

    for (int K = 1; K <= 3; ++K)
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j)
                CHECK(coefficient(K, i, j, cfg, DetectionRange::fixed(0),
                                  DetectionRange::fixed(0)) == 0.0);
}

TEST_CASE("loss-free symmetric counting fills only the antidiagonal") {
    Config cfg = simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    auto bs = assemble(cfg);
    for (int K = 0; K <= bs.k_max(); ++K) {
        const auto& b = bs.blocks[K];
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j) {
                if (i + j == K) continue;
                CHECK(b.at(i, j) == 0.0);
            }
    }
}

TEST_CASE("loss-free asymmetric counting shifts the populated skew diagonal") {
    Config cfg = simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 0));
    auto bs = assemble(cfg);
    bool saw_nonzero = false;
    for (int K = 0; K <= bs.k_max(); ++K) {
        const auto& b = bs.blocks[K];
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j) {
                // t=1, t'=0: entries live on i + j = K + t' - t = K - 1.
                if (i + j != K - 1) CHECK(b.at(i, j) == 0.0);
                else if (b.at(i, j) != 0.0) saw_nonzero = true;
            }
    }
    CHECK(saw_nonzero);
}

TEST_CASE("block trace reproduces the counting probability") {
    auto check_cfg = [](const Config& cfg) {
        auto bs = assemble(cfg);
        double p = pnrd_probability(cfg, cfg.strategy.t, cfg.strategy.t_prime);
        CHECK(bs.trace_weight == doctest::Approx(p).epsilon(1e-8));
    };
    check_cfg(simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1)));
    check_cfg(simple_config(0.6, 0.6, 0.15, 0.7, 0.1, Strategy::pnrd(1, 1)));
    check_cfg(simple_config(0.4, 0.5, 0.3, 0.75, 0.05, Strategy::pnrd(2, 1)));
    check_cfg(simple_config(0.7, 0.7, 0.1, 0.9, 0.0, Strategy::pnrd(0, 2)));
}

TEST_CASE("click-pattern traces reproduce the closed-form probabilities") {
    Config base = simple_config(0.5, 0.8, 0.05, 0.7, 0.1, Strategy::apd(false, false));
    auto probs = apd_probabilities(base);
    struct Case {
        bool a, b;
        double expected;
    } cases[] = {{false, false, probs.off_off},
                 {false, true, probs.off_on},
                 {true, false, probs.on_off},
                 {true, true, probs.on_on}};
    for (const auto& c : cases) {
        Config cfg = base;
        cfg.strategy = Strategy::apd(c.a, c.b);
        auto bs = assemble(cfg);
        CHECK(bs.trace_weight == doctest::Approx(c.expected).epsilon(1e-8));
    }
}

TEST_CASE("unrestricted detection sums give a normalised state") {
    for (double lambda : {0.3, 0.5, 0.7}) {
        Config cfg = simple_config(lambda, 0.6, 0.2, 0.75, 0.1, Strategy::pnrd(1, 1));
        auto bs = assemble_unconditioned(cfg);
        CHECK(bs.trace_weight == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("blocks are symmetric, non-negative and persymmetric when degenerate") {
    ConfigSampler sampler(101);
    for (int trial = 0; trial < 25; ++trial) {
        Config cfg = sampler.config(0.1, 0.6);
        auto bs = assemble(cfg);
        for (const auto& b : bs.blocks) {
            double scale = std::max(b.max_abs(), 1.0);
            for (int i = 0; i < b.n; ++i)
                for (int j = i; j < b.n; ++j) {
                    CHECK(b.at(i, j) >= 0.0);
                    CHECK(std::fabs(b.at(i, j) - b.at(j, i)) <= 1e-14 * scale);
                }
        }
    }
    for (int trial = 0; trial < 25; ++trial) {
        Config cfg = sampler.symmetric_config(0.1, 0.6);
        auto bs = assemble(cfg);
        for (const auto& b : bs.blocks) {
            double scale = std::max(b.max_abs(), 1.0);
            for (int i = 0; i < b.n; ++i)
                for (int j = 0; j < b.n; ++j)
                    CHECK(std::fabs(b.at(i, j) - b.at(b.n - 1 - i, b.n - 1 - j)) <=
                          1e-12 * scale);
        }
    }
}

TEST_CASE("deepening the truncation leaves the log-negativity unchanged") {
    Config cfg = simple_config(0.8, 0.7, 0.1, 0.7, 0.1, Strategy::pnrd(1, 1));
    cfg.truncation.k_max = 160;
    double en1 = metrics(assemble(cfg), cfg.lambda).log_negativity;
    cfg.truncation.k_max = 200;
    double en2 = metrics(assemble(cfg), cfg.lambda).log_negativity;
    CHECK(std::fabs(en1 - en2) < 1e-9);
}

TEST_CASE("empty herald yields an all-zero block set") {
    // No tap at all but one photon demanded: the conditioning is impossible.
    Config cfg = simple_config(0.5, 1.0, 0.0, 1.0, 0.0, Strategy::pnrd(1, 1));
    auto bs = assemble(cfg);
    CHECK(bs.trace_weight == 0.0);
    CHECK_THROWS_AS(metrics(bs, cfg.lambda), impossible_event);
}

TEST_CASE("asymmetric reduction: identity at equal counts") {
    Config cfg = simple_config(0.5, 0.8, 0.0, 0.8, 0.0, Strategy::pnrd(1, 1));
    auto bs = assemble(cfg);
    auto red = reduce_asymmetric(bs, 1, 1);
    REQUIRE(red.blocks.size() == bs.blocks.size());
    for (size_t k = 0; k < bs.blocks.size(); ++k)
        CHECK(red.blocks[k].a == bs.blocks[k].a);
}

TEST_CASE("asymmetric reduction: index bookkeeping at (0,1)") {
    Config cfg = simple_config(0.5, 0.8, 0.0, 0.7, 0.0, Strategy::pnrd(0, 1));
    auto bs = assemble(cfg);
    auto red = reduce_asymmetric(bs, 0, 1);
    REQUIRE(red.blocks.size() >= 1);
    CHECK(red.blocks[0].n == 1);
    CHECK(red.blocks[0].at(0, 0) == bs.blocks[1].at(1, 1));
}

TEST_CASE("asymmetric reduction matches the direct antidiagonal formula") {
    // Independent route: the reduced antidiagonal entries written out with
    // factorials, t=1, t'=2.
    const double lambda = 0.4, a2 = 0.7, a2p = 0.7;
    Config cfg = simple_config(lambda, a2, 0.0, a2p, 0.0, Strategy::pnrd(1, 2));
    auto bs = assemble(cfg);
    auto red = reduce_asymmetric(bs, 1, 2);
    const int t = 1, tp = 2;
    const double b2 = 1.0 - a2, b2p = 1.0 - a2p;
    using sf::log_factorial;
    for (int kbar = 0; kbar <= std::min(6, red.k_max()); ++kbar) {
        for (int i = 0; i <= kbar; ++i) {
            double ln = (kbar + 2 * tp) * std::log(lambda) +
                        0.5 * (kbar + 2 * (tp - t)) * std::log(a2) +
                        0.5 * kbar * std::log(a2p) + t * std::log(b2) +
                        tp * std::log(b2p) + log_factorial(i + tp) +
                        log_factorial(kbar - i + tp) - log_factorial(t) -
                        log_factorial(tp) -
                        0.5 * (log_factorial(i + tp - t) +
                               log_factorial(kbar - i + tp - t) +
                               log_factorial(kbar - i) + log_factorial(i));
            double expected = std::exp(ln);
            CHECK(red.blocks[kbar].at(i, kbar - i) ==
                  doctest::Approx(expected).epsilon(1e-11));
        }
    }
}

TEST_CASE("asymmetric reduction refuses lossy blocks") {
    Config cfg = simple_config(0.5, 0.7, 0.1, 0.7, 0.1, Strategy::pnrd(0, 1));
    auto bs = assemble(cfg);
    CHECK_THROWS_AS(reduce_asymmetric(bs, 0, 1), unsupported_structure);
}
