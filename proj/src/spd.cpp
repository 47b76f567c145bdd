#include "skewmix/spd.hpp"

#include <cmath>

#include "skewmix/errors.hpp"

namespace skewmix {

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw contract_error("SpdMatrix: matrix must be square and non-empty");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw not_positive_definite_error("SpdMatrix: Cholesky factorization failed (matrix not positive definite)");
    }
    lower_ = llt.matrixL();
    log_det_ = 0.0;
    for (int i = 0; i < lower_.rows(); ++i) {
        const double d = lower_(i, i);
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw not_positive_definite_error("SpdMatrix: non-positive Cholesky pivot");
        }
        log_det_ += 2.0 * std::log(d);
    }
}

SpdMatrix SpdMatrix::identity(int dim) {
    return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

Eigen::VectorXd SpdMatrix::solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd y = lower_.triangularView<Eigen::Lower>().solve(b);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::MatrixXd SpdMatrix::solve(const Eigen::MatrixXd& b) const {
    Eigen::MatrixXd y = lower_.triangularView<Eigen::Lower>().solve(b);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

double SpdMatrix::inv_quad(const Eigen::VectorXd& x) const {
    return lower_.triangularView<Eigen::Lower>().solve(x).squaredNorm();
}

Eigen::VectorXd SpdMatrix::half_solve(const Eigen::VectorXd& x) const {
    return lower_.triangularView<Eigen::Lower>().solve(x);
}

SpdMatrix SpdMatrix::scaled(double c) const {
    if (!(c > 0.0)) throw contract_error("SpdMatrix::scaled: factor must be positive");
    SpdMatrix out(*this);
    out.lower_ *= std::sqrt(c);
    out.log_det_ += dim() * std::log(c);
    return out;
}

double spd_jitter(const Eigen::MatrixXd& m) {
    return 1e-8 * m.trace() / static_cast<double>(m.rows());
}

} // namespace skewmix
