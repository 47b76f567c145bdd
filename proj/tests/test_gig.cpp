#include <cmath>

#include "doctest.h"
#include "skewmix/bessel.hpp"
#include "skewmix/errors.hpp"
#include "skewmix/gig.hpp"
#include "skewmix/special.hpp"
#include "support/oracles.hpp"

using namespace skewmix;

namespace {

// test-side oracle: integral of the density over (0, inf) via the transform
// w = exp(t) and adaptive Simpson on a wide fixed window
double integral_of_density(const GigParams& p, const std::function<double(double)>& extra = nullptr) {
    return oracle::integrate(
        [&](double t) {
            const double w = std::exp(t);
            const double f = std::exp(gig_logpdf(w, p)) * w;
            return extra ? f * extra(w) : f;
        },
        -40.0, 40.0, 1e-12);
}

} // namespace

TEST_CASE("density integrates to one") {
    CHECK(integral_of_density(GigParams(2.0, 3.0, -1.5)) == doctest::Approx(1.0).epsilon(1e-6));
    for (double lam : {-3.0, -0.5, 0.0, 0.5, 3.0}) {
        CHECK(integral_of_density(GigParams(2.0, 3.0, lam)) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("near the inverse gamma limit the densities agree") {
    const double nu = 4.0;
    const GigParams p(1e-8, nu, -0.5 * nu);
    for (double w : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double ig = 2.0 * std::log(2.0) - std::lgamma(2.0) - 3.0 * std::log(w) - 2.0 / w;
        CHECK(gig_logpdf(w, p) == doctest::Approx(ig).epsilon(1e-4));
    }
}

TEST_CASE("mean formula matches quadrature") {
    const GigParams p(2.0, 3.0, 0.5);
    const double by_quad = integral_of_density(p, [](double w) { return w; });
    CHECK(gig_mean(p) == doctest::Approx(by_quad).epsilon(1e-8));
}

TEST_CASE("sampler hits the quadrature mean within three standard errors") {
    const GigParams p(2.0, 3.0, -1.5);
    Rng rng(20190101);
    const auto draws = gig_sample(rng, p, 100000);
    const auto ms = oracle::mean_se(draws);
    CHECK(std::fabs(ms.mean - gig_mean(p)) <= 3.0 * ms.se);
    for (double w : draws) CHECK(w > 0.0);
}

TEST_CASE("sampler is deterministic given the seed") {
    const GigParams p(1.0, 1.0, -2.0);
    Rng a(42), b(42);
    const auto da = gig_sample(a, p, 50);
    const auto db = gig_sample(b, p, 50);
    for (int i = 0; i < 50; ++i) CHECK(da[i] == db[i]);
}

TEST_CASE("sampler passes a KS test against the numeric cdf across regimes") {
    // regimes: ROU no-shift, ROU shift (lambda > 2), concentrated (small omega)
    for (const GigParams& p : {GigParams(2.0, 3.0, -1.5), GigParams(2.0, 3.0, 3.0),
                               GigParams(0.02, 0.02, 0.4)}) {
        Rng rng(7);
        auto draws = gig_sample(rng, p, 20000);
        auto cdf = [&](double x) {
            return oracle::integrate(
                [&](double t) {
                    const double w = std::exp(t);
                    return std::exp(gig_logpdf(w, p)) * w;
                },
                -45.0, std::log(x), 1e-11);
        };
        const double d = oracle::ks_statistic(draws, cdf);
        const double pval = kolmogorov_q(std::sqrt(20000.0) * d);
        CHECK(pval > 0.01);
    }
}

TEST_CASE("inverse gamma sampler mean and support") {
    Rng rng(20190101);
    const double nu = 8.0;
    const auto draws = inv_gamma_sample(rng, 0.5 * nu, 0.5 * nu, 100000);
    const auto ms = oracle::mean_se(draws);
    CHECK(std::fabs(ms.mean - 4.0 / 3.0) <= 3.0 * ms.se);
    for (double w : draws) CHECK(w > 0.0);

    Rng a(3), b(3);
    CHECK(inv_gamma_sample(a, 2.0, 2.0, 10) == inv_gamma_sample(b, 2.0, 2.0, 10));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(GigParams(0.0, 1.0, 0.5), contract_error);
    CHECK_THROWS_AS(GigParams(1.0, -1.0, 0.5), contract_error);
    CHECK_THROWS_AS(gig_logpdf(0.0, GigParams(1.0, 1.0, 0.0)), domain_error);
    CHECK_THROWS_AS(gig_logpdf(-1.0, GigParams(1.0, 1.0, 0.0)), domain_error);
}
