#pragma once

namespace subsim::sf {

// ln Gamma(x) for x > 0. Throws std::domain_error on non-positive or
// non-finite arguments.
double log_gamma(double x);

// ln(n!) for n >= 0, served from a cached table.
double log_factorial(int n);

// n! as a double, computed by exact integer product (n <= 170).
double factorial(int n);

// Legendre polynomial P_n(z) by the three-term upward recurrence.
double legendre(int n, double z);

// Jacobi polynomial P_n^(a,b)(z) for integer a, b >= 0. Reduces to
// legendre(n, z) when a == b == 0.
double jacobi(int n, int a, int b, double z);

} // namespace subsim::sf
