#include "subsim/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace subsim;

TEST_CASE("log_gamma at small integers and known points") {
    CHECK(sf::log_gamma(1.0) == 0.0);
    CHECK(sf::log_gamma(2.0) == 0.0);
    CHECK(sf::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    // ln Gamma(0.5) = ln sqrt(pi)
    CHECK(sf::log_gamma(0.5) ==
          doctest::Approx(0.5723649429247001).epsilon(1e-14));
}

TEST_CASE("log_gamma matches accumulated log products up to 500") {
    // Independent route: ln(n!) as a long-double sum of logs.
    long double acc = 0.0L;
    for (int n = 2; n <= 500; ++n) {
        acc += std::log(static_cast<long double>(n - 1));
        double expected = static_cast<double>(acc);
        CHECK(sf::log_gamma(n) ==
              doctest::Approx(expected).epsilon(1e-13));
        CHECK(sf::log_factorial(n - 1) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma domain errors") {
    CHECK_THROWS_AS(sf::log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(sf::log_gamma(-3.0), std::domain_error);
    CHECK_THROWS_AS(sf::log_gamma(std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS(sf::log_gamma(std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("factorial round trip through log space") {
    // Mathematically exp(lnGamma(n+1)) = n!; in floating point the round
    // trip is good to a few ulp.
    double f = 1.0;
    for (int n = 0; n <= 20; ++n) {
        if (n > 0) f *= n;
        CHECK(sf::factorial(n) == f);
        double round_trip = std::exp(sf::log_gamma(n + 1.0));
        CHECK(std::fabs(round_trip - f) <= 16 * std::numeric_limits<double>::epsilon() * f);
        CHECK(std::round(round_trip) == f);
    }
}

TEST_CASE("legendre examples") {
    CHECK(sf::legendre(0, 7.3) == 1.0);
    CHECK(sf::legendre(1, 1.38095) == 1.38095);
    // (3 z^2 - 1) / 2 at z = 3
    CHECK(sf::legendre(2, 3.0) == doctest::Approx(13.0).epsilon(1e-14));
}

TEST_CASE("legendre three-term recurrence holds") {
    for (int n = 1; n <= 20; ++n) {
        for (double z = 1.0; z <= 50.0; z += 4.9) {
            double lhs = (n + 1) * sf::legendre(n + 1, z);
            double rhs = (2 * n + 1) * z * sf::legendre(n, z) - n * sf::legendre(n - 1, z);
            double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("jacobi examples") {
    CHECK(sf::jacobi(0, 3, 0, 2.5) == 1.0);
    CHECK(sf::jacobi(1, 0, 0, 4.0) == 4.0);
    // (a+1) + (a+b+2)(z-1)/2 at n=1, a=1, b=0, z=3
    CHECK(sf::jacobi(1, 1, 0, 3.0) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("jacobi with zero indices reduces to legendre") {
    for (int n = 0; n <= 10; ++n)
        for (double z = 1.0; z <= 50.0; z += 2.45) {
            double pj = sf::jacobi(n, 0, 0, z);
            double pl = sf::legendre(n, z);
            CHECK(std::fabs(pj - pl) <= 1e-12 * std::max(1.0, std::fabs(pl)));
        }
}

TEST_CASE("polynomial domain errors") {
    CHECK_THROWS_AS(sf::legendre(-1, 2.0), std::domain_error);
    CHECK_THROWS_AS(sf::legendre(2, std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS(sf::jacobi(2, -1, 0, 2.0), std::domain_error);
    CHECK_THROWS_AS(sf::jacobi(-2, 0, 0, 2.0), std::domain_error);
}
