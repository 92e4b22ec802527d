#include "subsim/evaluate.hpp"

#include "subsim/analytic.hpp"
#include "subsim/blocks.hpp"

namespace subsim {

bool has_closed_form(const Config& cfg) {
    if (cfg.strategy.kind != Strategy::Kind::pnrd) return false;
    if (cfg.lossless()) return true;
    return cfg.equal_arms() && cfg.strategy.t == cfg.strategy.t_prime;
}

Metrics evaluate_config(const Config& cfg) {
    cfg.validate();
    if (cfg.strategy.kind == Strategy::Kind::pnrd) {
        int t = cfg.strategy.t, tp = cfg.strategy.t_prime;
        if (cfg.lossless()) {
            if (t == tp && cfg.equal_arms()) return lossless_symmetric(cfg, t);
            return lossless_asymmetric(cfg, t, tp);
        }
        if (t == tp && cfg.equal_arms()) return lossy_symmetric(cfg, t);
    }
    return evaluate_block_engine(cfg);
}

Metrics evaluate_block_engine(const Config& cfg) {
    cfg.validate();
    return metrics(assemble(cfg), cfg.lambda);
}

} // namespace subsim
