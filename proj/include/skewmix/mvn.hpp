#pragma once

#include <Eigen/Dense>

#include "skewmix/spd.hpp"

namespace skewmix {

/// Upper-right orthant probability P(X > h, Y > k) for a standard bivariate
/// normal pair with correlation rho (Genz's reformulation of Drezner &
/// Wesolowsky; absolute accuracy ~5e-16).
double bvn_upper(double h, double k, double rho);

/// Bivariate normal CDF P(X <= x, Y <= y) with correlation rho.
double bvn_cdf(double x, double y, double rho);

/// Multivariate normal CDF P(X <= point componentwise), X ~ N(mean, cov).
///
/// r = 1 uses erfc, r = 2 the deterministic bivariate rule, r >= 3 a
/// separation-of-variables integrand over a frozen randomized quasi-Monte
/// Carlo sequence (deterministic across runs; see kQmcSequenceVersion).
/// tol must lie in [1e-10, 1e-2]; the estimated absolute error is kept
/// below tol or a numeric_error carrying the achieved error is thrown.
double mvn_cdf(const Eigen::VectorXd& point,
               const Eigen::VectorXd& mean,
               const SpdMatrix& cov,
               double tol = 1e-6);

/// Same integral for standardized upper limits and a correlation Cholesky
/// factor, with a caller-chosen point budget and no adaptivity. Used by the
/// density code paths that need a fixed, smooth evaluation cost.
double mvn_cdf_sov(const Eigen::VectorXd& upper_std,
                   const Eigen::MatrixXd& corr_lower,
                   int points_per_shift,
                   int n_shifts,
                   double* error_estimate = nullptr);

} // namespace skewmix
