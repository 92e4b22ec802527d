#pragma once

#include <array>
#include <string>

namespace subsim {

// Amplitude transmissivities of the four beam splitters in one arm:
// t1 upstream loss, t2 the subtraction tap, t3 detection loss, t4
// downstream loss. Reflectivity r_i = sqrt(1 - t_i^2).
struct ArmTransmissivities {
    double t1 = 1.0, t2 = 1.0, t3 = 1.0, t4 = 1.0;

    // Inputs are intensity values T_i^2 in [0, 1]; amplitudes are derived.
    static ArmTransmissivities from_intensities(double t1_sq, double t2_sq,
                                                double t3_sq, double t4_sq);
    double r1() const;
    double r2() const;
    double r3() const;
    double r4() const;
};

// Fractions of one arm's photons routed to the kept / detected / lost
// channels. Always sums to one.
struct ModeParams {
    double alpha2 = 1.0;
    double beta2 = 0.0;
    double gamma2 = 0.0;

    // beta2 is implied: 1 - alpha2 - gamma2. Throws std::domain_error when
    // the fractions leave [0, 1] or overshoot their sum.
    static ModeParams from_fractions(double alpha2, double gamma2);
    void validate() const;
};

// (alpha^2, beta^2, gamma^2) of an arm from its beam-splitter settings.
ModeParams mode_coefficients(const ArmTransmissivities& arm);

using ArmUnitary = std::array<std::array<double, 5>, 5>;

// The 5x5 orthogonal mode transformation of one arm. Row 0 is the kept
// mode, row 2 the detected mode, rows 1/3/4 the loss modes; only column 0
// acts on a populated input.
ArmUnitary build_arm_unitary(const ArmTransmissivities& arm);

// Detection scheme: exact photon counts (photon-number resolving) or
// click / no-click per arm (threshold detectors).
struct Strategy {
    enum class Kind { pnrd, apd };
    Kind kind = Kind::pnrd;
    int t = 1, t_prime = 1;                    // pnrd counts
    bool click = true, click_prime = true;     // apd pattern

    static Strategy pnrd(int t, int t_prime);
    static Strategy apd(bool click, bool click_prime);

    bool symmetric() const;
    std::string label() const;                 // e.g. "pnrd(1,0)", "apd(on,off)"
    static Strategy parse(const std::string& label);
};

// Numerical cutoffs. k_max caps the block index, term_rel_tol stops the
// open photon sums, block_tail_tol sets the geometric tail bound used to
// pick the block count, n_max is the Fock cutoff of the brute-force
// reference path.
struct TruncationPolicy {
    int k_max = 200;
    double term_rel_tol = 1e-15;
    double block_tail_tol = 1e-12;
    int n_max = 10;

    void validate() const;
};

struct Config {
    double lambda = 0.5;
    ModeParams arm;
    ModeParams arm_prime;
    Strategy strategy;
    TruncationPolicy truncation;

    void validate() const;
    bool equal_arms() const;
    bool lossless() const;
};

} // namespace subsim
