#pragma once

#include "subsim/entanglement.hpp"
#include "subsim/model.hpp"
#include "subsim/sym_eigen.hpp"

#include <vector>

namespace subsim {

// Exact truncated amplitudes of the beam-splitter output in kept/detected/
// lost occupation coordinates. For each photon number n the per-arm
// amplitude at (e, d, l), e + d + l = n, is the square root of the
// multinomial weight times alpha^e beta^d gamma^l.
struct JointAmplitudeTable {
    int n_max = 0;
    double lambda = 0.0;
    // amplitude[n][idx(d, l)] with e = n - d - l implied.
    std::vector<std::vector<double>> arm, arm_prime;

    static int index(int n, int d, int l);
    double norm_squared() const;
};

JointAmplitudeTable expand_state(const Config& cfg, int n_max);

// Dense unnormalised two-mode density matrix after projecting the detected
// counts onto the strategy and tracing the lost photons. Indexed by
// (e * (n_max+1) + e_prime).
SymMatrix conditioned_density(const JointAmplitudeTable& table, const Strategy& strategy);

// Metrics by dense partial transpose: swap the kept-mode indices, take the
// absolute eigenvalue sum.
Metrics oracle_metrics(const SymMatrix& rho, int n_max, double lambda);

// expand + condition + measure in one call, using the configured n_max.
Metrics oracle_evaluate(const Config& cfg);

} // namespace subsim
