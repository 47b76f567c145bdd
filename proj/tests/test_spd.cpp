#include <Eigen/Dense>

#include "doctest.h"
#include "skewmix/errors.hpp"
#include "skewmix/spd.hpp"

using namespace skewmix;

TEST_CASE("factor reconstructs the input") {
    Eigen::MatrixXd m(3, 3);
    m << 4.0, 1.2, -0.8,
         1.2, 3.0, 0.4,
        -0.8, 0.4, 2.5;
    const SpdMatrix spd(m);
    const Eigen::MatrixXd back = spd.dense();
    CHECK((back - m).cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff() <= 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(spd.lower_factor()(i, i) > 0.0);
    CHECK(spd.log_det() == doctest::Approx(std::log(m.determinant())).epsilon(1e-12));
}

TEST_CASE("solve and quadratic form agree with a dense inverse") {
    Eigen::MatrixXd m(2, 2);
    m << 2.0, 0.7, 0.7, 1.1;
    const SpdMatrix spd(m);
    Eigen::VectorXd b(2);
    b << 0.3, -1.4;
    const Eigen::VectorXd x = spd.solve(b);
    CHECK((m * x - b).norm() <= 1e-12);
    CHECK(spd.inv_quad(b) == doctest::Approx(b.dot(m.inverse() * b)).epsilon(1e-12));
}

TEST_CASE("non positive definite input raises the typed error") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3, -1
    CHECK_THROWS_AS(SpdMatrix{bad}, not_positive_definite_error);

    Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS_AS(SpdMatrix{singular}, not_positive_definite_error);
}

TEST_CASE("scaled keeps factor and determinant consistent") {
    Eigen::MatrixXd m(2, 2);
    m << 1.5, 0.2, 0.2, 0.9;
    const SpdMatrix spd(m);
    const SpdMatrix doubled = spd.scaled(2.0);
    CHECK((doubled.dense() - 2.0 * m).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(doubled.log_det() == doctest::Approx(spd.log_det() + 2.0 * std::log(2.0)));
}

TEST_CASE("jitter is 1e-8 trace over dim") {
    Eigen::MatrixXd m(2, 2);
    m << 3.0, 0.0, 0.0, 1.0;
    CHECK(spd_jitter(m) == doctest::Approx(1e-8 * 2.0));
}
