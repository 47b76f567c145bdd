#include <cmath>
#include <limits>

#include "doctest.h"
#include "skewmix/bessel.hpp"
#include "skewmix/errors.hpp"
#include "support/reference_values.hpp"

using namespace skewmix;

TEST_CASE("log bessel k matches high-precision reference values") {
    for (const auto& pt : refvals::kLogBesselK) {
        const double v = log_bessel_k(pt.order, pt.x);
        const double tol = (std::fabs(pt.order) >= kBesselAsymptoticOrder) ? 5e-9 : 1e-11;
        CHECK(v == doctest::Approx(pt.value).epsilon(tol));
    }
}

TEST_CASE("half-integer closed form") {
    // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
    for (double x : {0.1, 1.0, 4.0, 50.0}) {
        const double expected = 0.5 * std::log(3.14159265358979323846 / (2.0 * x)) - x;
        CHECK(log_bessel_k(0.5, x) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("order symmetry") {
    for (double lam : {0.3, 1.2, 2.3, 7.8, 60.5}) {
        for (double x : {0.05, 0.7, 3.0, 40.0}) {
            CHECK(log_bessel_k(lam, x) == doctest::Approx(log_bessel_k(-lam, x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("large-argument asymptotic") {
    // K_3(200): sqrt(pi/(2x)) e^{-x} (1 + (4 nu^2 - 1)/(8x) + ...)
    const double x = 200.0;
    const double nu = 3.0;
    const double mu = 4.0 * nu * nu;
    const double series = 1.0 + (mu - 1.0) / (8.0 * x) +
                          (mu - 1.0) * (mu - 9.0) / (2.0 * 64.0 * x * x) +
                          (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / (6.0 * 512.0 * x * x * x);
    const double expected = 0.5 * std::log(3.14159265358979323846 / (2.0 * x)) - x + std::log(series);
    CHECK(log_bessel_k(nu, x) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("stays finite across the full supported range") {
    CHECK(std::isfinite(log_bessel_k(0.5, 1e-290)));
    CHECK(std::isfinite(log_bessel_k(5000.0, 1e-250)));
    CHECK(std::isfinite(log_bessel_k(5000.0, 1e290)));
    CHECK(std::isfinite(log_bessel_k(0.0, 1e290)));
    CHECK(std::isfinite(log_bessel_k(-4999.5, 0.3)));
}

TEST_CASE("continuity across the order switchover") {
    const double below = log_bessel_k(kBesselAsymptoticOrder - 1e-9, 17.0);
    const double above = log_bessel_k(kBesselAsymptoticOrder + 1e-9, 17.0);
    CHECK(below == doctest::Approx(above).epsilon(1e-7));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(log_bessel_k(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(log_bessel_k(1.0, -2.0), domain_error);
    CHECK_THROWS_AS(log_bessel_k(1.0, std::numeric_limits<double>::infinity()), domain_error);
}
