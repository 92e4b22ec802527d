#include "subsim/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace subsim::sf {

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("log_gamma: argument must be positive and finite");
    return std::lgamma(x);
}

namespace {

// Table of ln(k!) large enough for every index the coefficient engine can
// produce (block index <= 200 plus the capped open sums).
constexpr int kLogFactorialTableSize = 1 << 14;

const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactorialTableSize);
        t[0] = 0.0;
        for (int k = 1; k < kLogFactorialTableSize; ++k)
            t[k] = t[k - 1] + std::log(static_cast<double>(k));
        return t;
    }();
    return table;
}

} // namespace

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    const auto& table = log_factorial_table();
    if (n < kLogFactorialTableSize) return table[n];
    return std::lgamma(n + 1.0);
}

double factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    if (n > 170) throw std::domain_error("factorial: overflows double beyond 170!");
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double legendre(int n, double z) {
    if (n < 0) throw std::domain_error("legendre: negative order");
    if (!std::isfinite(z)) throw std::domain_error("legendre: non-finite argument");
    if (n == 0) return 1.0;
    if (n == 1) return z;
    double pkm1 = 1.0, pk = z;
    for (int k = 1; k < n; ++k) {
        double pkp1 = ((2 * k + 1) * z * pk - k * pkm1) / (k + 1);
        pkm1 = pk;
        pk = pkp1;
    }
    return pk;
}

double jacobi(int n, int a, int b, double z) {
    if (n < 0 || a < 0 || b < 0)
        throw std::domain_error("jacobi: order and indices must be non-negative");
    if (!std::isfinite(z)) throw std::domain_error("jacobi: non-finite argument");
    if (n == 0) return 1.0;
    double p1 = (a + 1) + 0.5 * (a + b + 2) * (z - 1.0);
    if (n == 1) return p1;
    double pkm1 = 1.0, pk = p1;
    for (int k = 2; k <= n; ++k) {
        double s = 2.0 * k + a + b;
        double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        double c2 = (s - 1.0) * (s * (s - 2.0) * z + static_cast<double>(a) * a - static_cast<double>(b) * b);
        double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        double pkp1 = (c2 * pk - c3 * pkm1) / c1;
        pkm1 = pk;
        pk = pkp1;
    }
    return pk;
}

} // namespace subsim::sf
