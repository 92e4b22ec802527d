#include "subsim/entanglement.hpp"

#include "subsim/errors.hpp"
#include "subsim/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace subsim {

double tmss_log_negativity(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 1.0)
        throw std::domain_error("squeezing parameter must lie in [0, 1)");
    return std::log2((1.0 + lambda) / (1.0 - lambda));
}

std::pair<double, double> trace_and_norm(const BlockSet& bs) {
    double tr = 0.0;
    for (const auto& b : bs.blocks) tr += b.trace();
    tr *= bs.prefactor;
    if (tr <= 0.0) throw impossible_event("conditioned state has zero probability");

    int n = static_cast<int>(bs.blocks.size());
    std::vector<double> sums(n, 0.0);
    parallel_for(n, [&](int k) { sums[k] = abs_eigenvalue_sum(bs.blocks[k]); });
    double norm = 0.0;
    for (double s : sums) norm += s;
    return {tr, bs.prefactor * norm};
}

double antidiagonal_trace_sum(const BlockSet& bs) {
    double s = 0.0;
    for (const auto& b : bs.blocks)
        for (int i = 0; i < b.n; ++i) s += b.at(i, b.n - 1 - i);
    return bs.prefactor * s;
}

namespace {

void require_persymmetric(const BlockSet& bs) {
    for (const auto& b : bs.blocks) {
        double scale = std::max(b.max_abs(), 1.0);
        for (int i = 0; i < b.n; ++i)
            for (int j = i; j < b.n; ++j) {
                int ri = b.n - 1 - i, rj = b.n - 1 - j;
                if (std::fabs(b.at(i, j) - b.at(ri, rj)) > 1e-10 * scale)
                    throw unsupported_structure(
                        "blocks are not persymmetric; use the eigenvalue path");
            }
    }
}

} // namespace

double antidiagonal_log_negativity(const BlockSet& bs) {
    require_persymmetric(bs);
    double tr = bs.trace_weight;
    if (tr <= 0.0) throw impossible_event("conditioned state has zero probability");
    return std::log2(antidiagonal_trace_sum(bs) / tr);
}

Metrics metrics_from(double probability, double log_negativity, double lambda) {
    if (lambda == 0.0)
        throw std::domain_error("gain undefined at zero squeezing");
    Metrics m;
    m.probability = probability;
    m.log_negativity = log_negativity;
    m.negativity = 0.5 * (std::exp2(log_negativity) - 1.0);
    m.baseline = tmss_log_negativity(lambda);
    m.gain = log_negativity / m.baseline - 1.0;
    m.rate = m.probability * m.gain;
    return m;
}

Metrics metrics(const BlockSet& bs, double lambda) {
    if (lambda == 0.0)
        throw std::domain_error("gain undefined at zero squeezing");
    auto [tr, norm] = trace_and_norm(bs);
    return metrics_from(tr, std::log2(norm / tr), lambda);
}

} // namespace subsim
