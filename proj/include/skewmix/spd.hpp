#pragma once

#include <Eigen/Dense>

namespace skewmix {

/// Symmetric positive definite matrix held by its lower Cholesky factor.
///
/// Construction factorizes immediately and throws not_positive_definite_error
/// on a non-positive pivot; callers that want regularization must add an
/// explicit jitter themselves before constructing.
class SpdMatrix {
public:
    SpdMatrix() = default;

    /// Factorizes `m` (must be symmetric; only the lower triangle is read).
    explicit SpdMatrix(const Eigen::MatrixXd& m);

    static SpdMatrix identity(int dim);

    int dim() const { return static_cast<int>(lower_.rows()); }
    const Eigen::MatrixXd& lower_factor() const { return lower_; }
    double log_det() const { return log_det_; }

    /// The full matrix L L^T.
    Eigen::MatrixXd dense() const { return lower_ * lower_.transpose(); }

    /// A^{-1} b.
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

    /// x^T A^{-1} x (squared Mahalanobis norm).
    double inv_quad(const Eigen::VectorXd& x) const;

    /// L^{-1} x (whitening transform).
    Eigen::VectorXd half_solve(const Eigen::VectorXd& x) const;

    /// Scales the matrix by c > 0 (factor by sqrt(c)).
    SpdMatrix scaled(double c) const;

private:
    Eigen::MatrixXd lower_;
    double log_det_ = 0.0;
};

/// Recommended jitter for callers that regularize after a factorization
/// failure: 1e-8 * trace / dim added to the diagonal.
double spd_jitter(const Eigen::MatrixXd& m);

} // namespace skewmix
