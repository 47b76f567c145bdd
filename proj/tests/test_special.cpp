#include <cmath>

#include "doctest.h"
#include "skewmix/errors.hpp"
#include "skewmix/special.hpp"
#include "support/reference_values.hpp"

using namespace skewmix;

TEST_CASE("normal cdf and quantile match reference values") {
    for (const auto& pt : refvals::kNormQuantile) {
        const double q = norm_quantile(pt.p);
        CHECK(q == doctest::Approx(pt.value).epsilon(1e-13));
        if (pt.p > 1e-250) {
            CHECK(norm_cdf(q) == doctest::Approx(pt.p).epsilon(1e-12));
        }
    }
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(norm_quantile(0.0), domain_error);
    CHECK_THROWS_AS(norm_quantile(1.0), domain_error);
}

TEST_CASE("log normal cdf is accurate deep in the left tail") {
    // reference: log Phi(-40) via the asymptotic series, cross-checked by the
    // identity Phi(-x) = phi(x)/x (1 - 1/x^2 + 3/x^4 - ...)
    const double x = -40.0;
    const double lead = -0.5 * x * x - 0.5 * std::log(2.0 * 3.14159265358979323846) -
                        std::log(40.0);
    const double corr = std::log1p(-1.0 / 1600.0 + 3.0 / (1600.0 * 1600.0));
    CHECK(norm_logcdf(x) == doctest::Approx(lead + corr).epsilon(1e-10));
    CHECK(norm_logcdf(0.0) == doctest::Approx(std::log(0.5)));
    CHECK(norm_logcdf(9.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mills ratio is smooth across the asymptotic switch") {
    for (double x : {-8.5, -8.0001, -7.9999, -7.5}) {
        const double direct = norm_pdf(x) / norm_cdf(x);
        CHECK(mills_ratio_lower(x) == doctest::Approx(direct).epsilon(1e-9));
    }
    CHECK(mills_ratio_lower(-60.0) == doctest::Approx(60.0).epsilon(1e-3));
}

TEST_CASE("digamma matches reference values") {
    for (const auto& pt : refvals::kDigamma) {
        CHECK(digamma(pt.x) == doctest::Approx(pt.value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(digamma(0.0), domain_error);
    CHECK_THROWS_AS(digamma(-3.0), domain_error);
}

TEST_CASE("incomplete gamma matches reference values and inverts") {
    for (const auto& pt : refvals::kGammaQ) {
        const double q = gamma_q(pt.a, pt.x);
        CHECK(q == doctest::Approx(pt.value).epsilon(1e-12));
        CHECK(gamma_p(pt.a, pt.x) == doctest::Approx(1.0 - pt.value).epsilon(1e-10));
        if (q > 1e-12 && q < 1.0 - 1e-12) {
            CHECK(gamma_q_inv(pt.a, q) == doctest::Approx(pt.x).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(gamma_q(-1.0, 2.0), domain_error);
    CHECK_THROWS_AS(gamma_q_inv(2.0, 0.0), domain_error);
}

TEST_CASE("incomplete beta and t cdf match reference values") {
    for (const auto& pt : refvals::kIncBeta) {
        CHECK(inc_beta(pt.a, pt.b, pt.x) == doctest::Approx(pt.value).epsilon(1e-12));
    }
    for (const auto& pt : refvals::kTCdf) {
        CHECK(t_cdf(pt.x, pt.dof) == doctest::Approx(pt.value).epsilon(1e-12));
    }
    CHECK(t_cdf(0.0, 7.0) == doctest::Approx(0.5));
}

TEST_CASE("kolmogorov survival function basics") {
    CHECK(kolmogorov_q(1e-9) == doctest::Approx(1.0));
    // Q(0.8275) ~ 0.5 (median of the Kolmogorov distribution)
    CHECK(kolmogorov_q(0.82757) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(kolmogorov_q(2.5) < 1e-4);
    CHECK(kolmogorov_q(0.5) > kolmogorov_q(0.6));
}
