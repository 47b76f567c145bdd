#include <cmath>

#include "doctest.h"
#include "skewmix/errors.hpp"
#include "skewmix/mvn.hpp"
#include "skewmix/rng.hpp"
#include "skewmix/special.hpp"
#include "support/oracles.hpp"

using namespace skewmix;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}
} // namespace

TEST_CASE("univariate reduces to the normal cdf") {
    const SpdMatrix one = SpdMatrix::identity(1);
    CHECK(mvn_cdf(vec({0.0}), vec({0.0}), one) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mvn_cdf(vec({1.96}), vec({0.0}), one) == doctest::Approx(0.9750021048517795).epsilon(1e-10));
}

TEST_CASE("bivariate orthant with correlation 0.5 equals 1/3") {
    // closed form: P(X<=0, Y<=0) = 1/4 + asin(rho) / (2 pi)
    Eigen::MatrixXd cov(2, 2);
    cov << 1.0, 0.5, 0.5, 1.0;
    const double v = mvn_cdf(vec({0.0, 0.0}), vec({0.0, 0.0}), SpdMatrix(cov), 1e-8);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("bivariate matches the closed form on a rho grid") {
    for (double rho : {-0.95, -0.5, -0.1, 0.0, 0.3, 0.75, 0.9, 0.99}) {
        Eigen::MatrixXd cov(2, 2);
        cov << 1.0, rho, rho, 1.0;
        const double v = mvn_cdf(vec({0.0, 0.0}), vec({0.0, 0.0}), SpdMatrix(cov), 1e-8);
        const double expected = 0.25 + std::asin(rho) / (2.0 * 3.14159265358979323846);
        CHECK(v == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("three dimensional total mass and independence") {
    const SpdMatrix eye = SpdMatrix::identity(3);
    CHECK(mvn_cdf(vec({50.0, 50.0, 50.0}), vec({0.0, 0.0, 0.0}), eye, 1e-6) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // independent coordinates factorize
    const double v = mvn_cdf(vec({0.3, -0.2, 1.1}), vec({0.0, 0.0, 0.0}), eye, 1e-7);
    const double expected = norm_cdf(0.3) * norm_cdf(-0.2) * norm_cdf(1.1);
    CHECK(v == doctest::Approx(expected).epsilon(5e-6));
}

TEST_CASE("four dimensional equicorrelated orthant vs monte carlo oracle") {
    const int d = 4;
    const double rho = 0.4;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(d, d, rho);
    cov.diagonal().setOnes();
    const SpdMatrix spd(cov);
    const double v = mvn_cdf(Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d), spd, 1e-6);

    // plain Monte Carlo with the library factor but independent draws
    Rng rng(7777);
    const Eigen::MatrixXd lower = spd.lower_factor();
    int hits = 0;
    const int n = 400000;
    Eigen::VectorXd z(d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) z[j] = rng.normal();
        const Eigen::VectorXd x = lower * z;
        bool all = true;
        for (int j = 0; j < d; ++j) all = all && (x[j] <= 0.0);
        hits += all ? 1 : 0;
    }
    const double mc = static_cast<double>(hits) / n;
    const double se = std::sqrt(mc * (1.0 - mc) / n);
    CHECK(std::fabs(v - mc) <= 4.0 * se);
}

TEST_CASE("monotone in each coordinate of the point") {
    Eigen::MatrixXd cov(3, 3);
    cov << 1.0, 0.3, -0.2,
           0.3, 1.5, 0.1,
          -0.2, 0.1, 0.8;
    const SpdMatrix spd(cov);
    const Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
    double prev = -1.0;
    for (double t : {-2.0, -1.0, 0.0, 0.7, 1.5}) {
        const double v = mvn_cdf(vec({t, 0.4, -0.1}), mean, spd, 1e-7);
        CHECK(v >= prev - 2e-7);
        prev = v;
    }
}

TEST_CASE("deterministic across calls") {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) cov(i, j) = 0.2;
    const SpdMatrix spd(cov);
    const Eigen::VectorXd pt = Eigen::VectorXd::Constant(5, 0.5);
    const Eigen::VectorXd mean = Eigen::VectorXd::Zero(5);
    const double a = mvn_cdf(pt, mean, spd, 1e-6);
    const double b = mvn_cdf(pt, mean, spd, 1e-6);
    CHECK(a == b);
}

TEST_CASE("contract errors") {
    const SpdMatrix eye = SpdMatrix::identity(2);
    CHECK_THROWS_AS(mvn_cdf(vec({0.0, 0.0, 0.0}), vec({0.0, 0.0}), eye), contract_error);
    CHECK_THROWS_AS(mvn_cdf(vec({0.0, 0.0}), vec({0.0, 0.0}), eye, 0.5), contract_error);
}
