#include "subsim/blocks.hpp"

#include "subsim/errors.hpp"
#include "subsim/parallel.hpp"
#include "subsim/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace subsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using sf::log_factorial;

// Per-arm factors entering the inner photon-count sums. For extra-photon
// total s on an arm, the detected+lost weight is
//   fixed t       : beta^{2t} gamma^{2(s-t)} / (t! (s-t)!)
//   full          : (beta^2 + gamma^2)^s / s!        (binomial sum over d)
//   at least one  : [(beta^2 + gamma^2)^s - gamma^{2s}] / s!
struct ArmWeight {
    double beta2 = 0.0, gamma2 = 0.0, bg = 0.0;
    double ln_beta2 = kNegInf, ln_gamma2 = kNegInf, ln_bg = kNegInf;
    double q = 0.0; // gamma2 / (beta2 + gamma2)
    DetectionRange range;

    ArmWeight(const ModeParams& m, DetectionRange r) : range(r) {
        beta2 = m.beta2;
        gamma2 = m.gamma2;
        bg = beta2 + gamma2;
        if (beta2 > 0.0) ln_beta2 = std::log(beta2);
        if (gamma2 > 0.0) ln_gamma2 = std::log(gamma2);
        if (bg > 0.0) {
            ln_bg = std::log(bg);
            q = gamma2 / bg;
        }
    }

    // Smallest s with a possibly nonzero weight.
    int min_s() const {
        switch (range.kind) {
            case DetectionRange::Kind::fixed: return range.t;
            case DetectionRange::Kind::at_least_one: return 1;
            case DetectionRange::Kind::full: return 0;
        }
        return 0;
    }

    double ln_weight(int s) const {
        switch (range.kind) {
            case DetectionRange::Kind::fixed: {
                int t = range.t;
                if (s < t) return kNegInf;
                if (t > 0 && beta2 == 0.0) return kNegInf;
                if (s > t && gamma2 == 0.0) return kNegInf;
                double v = -log_factorial(t) - log_factorial(s - t);
                if (t > 0) v += t * ln_beta2;
                if (s > t) v += (s - t) * ln_gamma2;
                return v;
            }
            case DetectionRange::Kind::full: {
                if (bg == 0.0) return s == 0 ? 0.0 : kNegInf;
                return s * ln_bg - log_factorial(s);
            }
            case DetectionRange::Kind::at_least_one: {
                if (s == 0 || beta2 == 0.0 || bg == 0.0) return kNegInf;
                double corr = (q == 0.0) ? 0.0 : std::log1p(-std::pow(q, s));
                return s * ln_bg - log_factorial(s) + corr;
            }
        }
        return kNegInf;
    }
};

double coefficient_impl(int K, int i, int j, const Config& cfg,
                        const ArmWeight& wa, const ArmWeight& wb) {
    if (K < 0 || i < 0 || j < 0 || i > K || j > K)
        throw std::domain_error("coefficient: indices out of block");

    const double lambda = cfg.lambda;
    const double a2 = cfg.arm.alpha2;
    const double a2p = cfg.arm_prime.alpha2;

    if (a2 == 0.0 && i + j > 0) return 0.0;
    if (a2p == 0.0 && 2 * K - i - j > 0) return 0.0;

    if (lambda == 0.0) {
        // Vacuum input: only the zero-photon term survives.
        if (K != 0 || i != 0 || j != 0) return 0.0;
        double la = wa.ln_weight(0), lb = wb.ln_weight(0);
        if (la == kNegInf || lb == kNegInf) return 0.0;
        return std::exp(la + lb);
    }

    double ln_pref = -0.5 * (log_factorial(i) + log_factorial(j) +
                             log_factorial(K - i) + log_factorial(K - j));
    if (i + j > 0) ln_pref += 0.5 * (i + j) * std::log(a2);
    if (2 * K - i - j > 0) ln_pref += 0.5 * (2 * K - i - j) * std::log(a2p);

    const double ln_lambda = std::log(lambda);
    const double rel_tol = cfg.truncation.term_rel_tol;
    const int cap = 10 * cfg.truncation.k_max + 64;

    // s = lost + detected photons on the unprimed arm; the primed arm then
    // carries m = i + j - K + s.
    int s_lo = std::max(wa.min_s(), K - i - j + wb.min_s());
    if (s_lo < 0) s_lo = 0;

    double ln_scale = kNegInf;
    double sum = 0.0;
    double prev_ln = kNegInf;

    for (int step = 0; step < cap; ++step) {
        int s = s_lo + step;
        int m = i + j - K + s;
        double la = wa.ln_weight(s);
        double lb = (m >= 0) ? wb.ln_weight(m) : kNegInf;
        if (la == kNegInf || lb == kNegInf) break;

        double ln_t = (i + j + 2 * s) * ln_lambda + log_factorial(i + s) +
                      log_factorial(j + s) + la + lb;
        if (ln_scale == kNegInf) {
            ln_scale = ln_t;
            sum = 1.0;
            prev_ln = ln_t;
            continue;
        }
        double term = std::exp(ln_t - ln_scale);
        sum += term;
        if (sum > 1e270) {
            ln_scale += std::log(sum);
            sum = 1.0;
            prev_ln = ln_t;
            continue;
        }
        if (term < rel_tol * sum && ln_t < prev_ln) break;
        prev_ln = ln_t;
    }

    if (ln_scale == kNegInf || sum == 0.0) return 0.0;
    return std::exp(ln_pref + ln_scale + std::log(sum));
}

std::pair<DetectionRange, DetectionRange> ranges_for(const Strategy& s) {
    if (s.kind == Strategy::Kind::pnrd)
        return {DetectionRange::fixed(s.t), DetectionRange::fixed(s.t_prime)};
    return {s.click ? DetectionRange::on() : DetectionRange::fixed(0),
            s.click_prime ? DetectionRange::on() : DetectionRange::fixed(0)};
}

// Number of blocks: entries of block K scale as lambda^K, so keep blocks
// until the geometric tail drops below the configured bound.
int effective_k_max(const Config& cfg) {
    double lam = cfg.lambda;
    if (lam == 0.0) return 0;
    double k = std::log(cfg.truncation.block_tail_tol) / std::log(lam);
    int k_rule = static_cast<int>(std::floor(k)) + 1;
    return std::min(cfg.truncation.k_max, std::max(1, k_rule));
}

BlockSet assemble_with(const Config& cfg, DetectionRange ra, DetectionRange rb) {
    cfg.validate();
    BlockSet bs;
    bs.config = cfg;
    bs.prefactor = 1.0 - cfg.lambda * cfg.lambda;
    int kmax = effective_k_max(cfg);
    bs.blocks.assign(kmax + 1, SymMatrix());

    ArmWeight wa(cfg.arm, ra), wb(cfg.arm_prime, rb);
    parallel_for(kmax + 1, [&](int K) {
        SymMatrix C(K + 1);
        for (int i = 0; i <= K; ++i)
            for (int j = i; j <= K; ++j) {
                double v = coefficient_impl(K, i, j, cfg, wa, wb);
                C.at(i, j) = v;
                C.at(j, i) = v;
            }
        bs.blocks[K] = std::move(C);
    });

    double tr = 0.0;
    for (const auto& b : bs.blocks) tr += b.trace();
    bs.trace_weight = bs.prefactor * tr;
    return bs;
}

} // namespace

DetectionRange DetectionRange::fixed(int t) {
    if (t < 0) throw std::domain_error("detection count must be non-negative");
    return DetectionRange{Kind::fixed, t};
}
DetectionRange DetectionRange::full() { return DetectionRange{Kind::full, 0}; }
DetectionRange DetectionRange::on() { return DetectionRange{Kind::at_least_one, 0}; }

double coefficient(int K, int i, int j, const Config& cfg,
                   DetectionRange d_range, DetectionRange d_prime_range) {
    ArmWeight wa(cfg.arm, d_range), wb(cfg.arm_prime, d_prime_range);
    return coefficient_impl(K, i, j, cfg, wa, wb);
}

BlockSet assemble(const Config& cfg) {
    auto [ra, rb] = ranges_for(cfg.strategy);
    return assemble_with(cfg, ra, rb);
}

BlockSet assemble_unconditioned(const Config& cfg) {
    return assemble_with(cfg, DetectionRange::full(), DetectionRange::full());
}

BlockSet reduce_asymmetric(const BlockSet& bs, int t, int t_prime) {
    if (t > t_prime)
        throw std::domain_error("reduce_asymmetric: requires t <= t_prime (swap arms first)");
    if (!bs.config.lossless())
        throw unsupported_structure(
            "reduce_asymmetric: only lossless photon-counting blocks reduce; "
            "use the eigenvalue path instead");
    int shift = t_prime - t;
    if (shift == 0) return bs;

    BlockSet out;
    out.prefactor = bs.prefactor;
    out.config = bs.config;
    out.trace_weight = bs.trace_weight;
    int kbar_max = bs.k_max() - shift;
    if (kbar_max < 0) kbar_max = -1;
    out.blocks.reserve(kbar_max + 1);
    for (int kbar = 0; kbar <= kbar_max; ++kbar) {
        const SymMatrix& C = bs.blocks[kbar + shift];
        SymMatrix B(kbar + 1);
        for (int i = 0; i <= kbar; ++i)
            for (int j = 0; j <= kbar; ++j) B.at(i, j) = C.at(i + shift, j + shift);
        out.blocks.push_back(std::move(B));
    }
    return out;
}

} // namespace subsim
