#pragma once

#include "subsim/blocks.hpp"

#include <utility>

namespace subsim {

// Physical quantities of one conditioned state. log_negativity is in bits;
// gain is relative to the squeezed-input baseline; rate = probability * gain.
struct Metrics {
    double log_negativity = 0.0;
    double negativity = 0.0;
    double gain = 0.0;
    double probability = 0.0;
    double rate = 0.0;
    double baseline = 0.0;
};

// log2((1 + lambda) / (1 - lambda)) for lambda in [0, 1).
double tmss_log_negativity(double lambda);

// {trace, trace norm} of the physical operator: prefactor times the
// diagonal sum and the absolute eigenvalue sum over all blocks.
// Throws impossible_event when the trace vanishes.
std::pair<double, double> trace_and_norm(const BlockSet& bs);

// prefactor * sum_K of the antidiagonal sums. Only meaningful for
// symmetric + persymmetric blocks.
double antidiagonal_trace_sum(const BlockSet& bs);

// Log-negativity from antidiagonal sums, valid for symmetric +
// persymmetric blocks (equal-arm symmetric conditioning, or the reduced
// lossless asymmetric blocks). Throws unsupported_structure otherwise.
double antidiagonal_log_negativity(const BlockSet& bs);

// Full metrics from an assembled block set. Requires lambda > 0 (the gain
// is measured against the unconditioned baseline).
Metrics metrics(const BlockSet& bs, double lambda);

// Metrics from a probability and a log-negativity already in hand.
Metrics metrics_from(double probability, double log_negativity, double lambda);

} // namespace subsim
