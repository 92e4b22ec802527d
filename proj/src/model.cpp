#include "subsim/model.hpp"

#include "subsim/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace subsim {

namespace {

double amplitude_from_intensity(double t_sq, const char* name) {
    if (!std::isfinite(t_sq) || t_sq < 0.0 || t_sq > 1.0)
        throw std::domain_error(std::string(name) + ": intensity must lie in [0, 1]");
    return std::sqrt(t_sq);
}

double reflect(double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); }

} // namespace

ArmTransmissivities ArmTransmissivities::from_intensities(double t1_sq, double t2_sq,
                                                          double t3_sq, double t4_sq) {
    ArmTransmissivities a;
    a.t1 = amplitude_from_intensity(t1_sq, "T1^2");
    a.t2 = amplitude_from_intensity(t2_sq, "T2^2");
    a.t3 = amplitude_from_intensity(t3_sq, "T3^2");
    a.t4 = amplitude_from_intensity(t4_sq, "T4^2");
    return a;
}

double ArmTransmissivities::r1() const { return reflect(t1); }
double ArmTransmissivities::r2() const { return reflect(t2); }
double ArmTransmissivities::r3() const { return reflect(t3); }
double ArmTransmissivities::r4() const { return reflect(t4); }

ModeParams ModeParams::from_fractions(double alpha2, double gamma2) {
    if (!std::isfinite(alpha2) || alpha2 < 0.0 || alpha2 > 1.0)
        throw std::domain_error("alpha^2 must lie in [0, 1]");
    if (!std::isfinite(gamma2) || gamma2 < 0.0 || gamma2 > 1.0)
        throw std::domain_error("gamma^2 must lie in [0, 1]");
    if (alpha2 + gamma2 > 1.0 + 1e-12)
        throw std::domain_error("alpha^2 + gamma^2 exceeds 1");
    ModeParams m;
    m.alpha2 = alpha2;
    m.gamma2 = gamma2;
    m.beta2 = std::max(0.0, 1.0 - alpha2 - gamma2);
    return m;
}

void ModeParams::validate() const {
    for (double v : {alpha2, beta2, gamma2})
        if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
            throw std::domain_error("mode fractions must lie in [0, 1]");
    if (std::fabs(alpha2 + beta2 + gamma2 - 1.0) > 1e-9)
        throw std::domain_error("mode fractions must sum to 1");
}

ModeParams mode_coefficients(const ArmTransmissivities& arm) {
    double t1s = arm.t1 * arm.t1, t2s = arm.t2 * arm.t2;
    double t3s = arm.t3 * arm.t3, t4s = arm.t4 * arm.t4;
    double r1s = 1.0 - t1s, r2s = 1.0 - t2s, r3s = 1.0 - t3s, r4s = 1.0 - t4s;
    ModeParams m;
    m.alpha2 = t1s * t2s * t4s;
    m.beta2 = t1s * r2s * t3s;
    m.gamma2 = r1s + t1s * (r2s * r3s + t2s * r4s);
    return m;
}

ArmUnitary build_arm_unitary(const ArmTransmissivities& arm) {
    double t1 = arm.t1, t2 = arm.t2, t3 = arm.t3, t4 = arm.t4;
    double r1 = arm.r1(), r2 = arm.r2(), r3 = arm.r3(), r4 = arm.r4();
    return ArmUnitary{{
        {t1 * t2 * t4, -r1 * t2 * t4, -r2 * t4, 0.0, -r4},
        {r1, t1, 0.0, 0.0, 0.0},
        {t1 * r2 * t3, -r1 * r2 * t3, t2 * t3, -r3, 0.0},
        {t1 * r2 * r3, -r1 * r2 * r3, t2 * r3, t3, 0.0},
        {t1 * t2 * r4, -r1 * t2 * r4, -r2 * r4, 0.0, t4},
    }};
}

Strategy Strategy::pnrd(int t, int t_prime) {
    if (t < 0 || t_prime < 0)
        throw std::domain_error("photon counts must be non-negative");
    Strategy s;
    s.kind = Kind::pnrd;
    s.t = t;
    s.t_prime = t_prime;
    return s;
}

Strategy Strategy::apd(bool click, bool click_prime) {
    Strategy s;
    s.kind = Kind::apd;
    s.click = click;
    s.click_prime = click_prime;
    return s;
}

bool Strategy::symmetric() const {
    return kind == Kind::pnrd ? t == t_prime : click == click_prime;
}

std::string Strategy::label() const {
    if (kind == Kind::pnrd)
        return "pnrd(" + std::to_string(t) + "," + std::to_string(t_prime) + ")";
    return std::string("apd(") + (click ? "on" : "off") + "," +
           (click_prime ? "on" : "off") + ")";
}

Strategy Strategy::parse(const std::string& label) {
    auto open = label.find('(');
    auto comma = label.find(',');
    auto close = label.find(')');
    if (open == std::string::npos || comma == std::string::npos ||
        close == std::string::npos || !(open < comma && comma < close))
        throw std::domain_error("unknown strategy label: " + label);
    std::string kind = label.substr(0, open);
    std::string a = label.substr(open + 1, comma - open - 1);
    std::string b = label.substr(comma + 1, close - comma - 1);
    if (kind == "pnrd") return pnrd(std::stoi(a), std::stoi(b));
    if (kind == "apd") {
        auto flag = [&](const std::string& v) {
            if (v == "on") return true;
            if (v == "off") return false;
            throw std::domain_error("unknown strategy label: " + label);
        };
        return apd(flag(a), flag(b));
    }
    throw std::domain_error("unknown strategy label: " + label);
}

void TruncationPolicy::validate() const {
    if (k_max < 1) throw std::domain_error("k_max must be >= 1");
    if (!(term_rel_tol > 0.0) || term_rel_tol > 1e-6)
        throw std::domain_error("term_rel_tol must lie in (0, 1e-6]");
    if (!(block_tail_tol > 0.0) || block_tail_tol > 1e-3)
        throw std::domain_error("block_tail_tol must lie in (0, 1e-3]");
    if (n_max < 2) throw std::domain_error("n_max must be >= 2");
}

void Config::validate() const {
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 1.0)
        throw std::domain_error("squeezing parameter must lie in [0, 1)");
    arm.validate();
    arm_prime.validate();
    truncation.validate();
    if (strategy.kind == Strategy::Kind::pnrd &&
        (strategy.t > truncation.n_max || strategy.t_prime > truncation.n_max))
        throw config_error("photon counts exceed the configured n_max");
}

bool Config::equal_arms() const {
    return arm.alpha2 == arm_prime.alpha2 && arm.beta2 == arm_prime.beta2 &&
           arm.gamma2 == arm_prime.gamma2;
}

bool Config::lossless() const { return arm.gamma2 == 0.0 && arm_prime.gamma2 == 0.0; }

} // namespace subsim
