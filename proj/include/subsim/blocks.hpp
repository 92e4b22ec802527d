#pragma once

#include "subsim/model.hpp"
#include "subsim/sym_eigen.hpp"

#include <vector>

namespace subsim {

// Range of detected-photon counts kept by the conditioning on one arm.
struct DetectionRange {
    enum class Kind { fixed, full, at_least_one };
    Kind kind = Kind::fixed;
    int t = 0;

    static DetectionRange fixed(int t);
    static DetectionRange full();
    static DetectionRange on();
};

// Block-diagonal coefficient matrices of the partially transposed
// conditioned state. Block K is (K+1)x(K+1); the physical operator is
// prefactor times the direct sum. trace_weight is the conditioning
// probability recorded at assembly; reduce_asymmetric preserves it even
// though the reduced blocks reindex the diagonal.
struct BlockSet {
    double prefactor = 1.0;
    std::vector<SymMatrix> blocks;
    Config config;
    double trace_weight = 0.0;

    int k_max() const { return static_cast<int>(blocks.size()) - 1; }
};

// One coefficient of the partially transposed conditioned state: the sums
// over detected counts in the given ranges and over the lost photons,
// assembled term-by-term in natural-log space.
double coefficient(int K, int i, int j, const Config& cfg,
                   DetectionRange d_range, DetectionRange d_prime_range);

// Blocks for the configured strategy. Click outcomes use the full-range
// minus zero-count difference rather than an open term-by-term sum.
BlockSet assemble(const Config& cfg);

// Blocks with both detection sums unrestricted; the result is the
// normalised unconditioned state (total trace 1).
BlockSet assemble_unconditioned(const Config& cfg);

// Antidiagonal submatrices B for lossless asymmetric photon counting with
// t <= t_prime: B block Kbar collects the single populated skew diagonal
// of original block K = Kbar + (t_prime - t).
BlockSet reduce_asymmetric(const BlockSet& bs, int t, int t_prime);

} // namespace subsim
