#pragma once

#include <Eigen/Dense>

#include "skewmix/params.hpp"
#include "skewmix/rng.hpp"

namespace skewmix {

/// n draws from the CFUSN distribution via its convolution representation
/// y = mu + delta |u0| + u1, u0 standard normal, u1 ~ N(0, sigma).
Eigen::MatrixXd cfusn_sample(Rng& rng, const SkewParams& params, int n);

/// n draws from the CFUST distribution: an inverse-gamma mixing draw scales
/// the joint covariance of (u0, u1).
Eigen::MatrixXd cfust_sample(Rng& rng, const SkewParams& params, int n);

/// n draws from the hidden truncation hyperbolic distribution: GIG mixing
/// with psi = chi = omega.
Eigen::MatrixXd hth_sample(Rng& rng, const SkewParams& params, int n);

/// Dispatch on params.family (Smcfusn has no dedicated sampler surface).
Eigen::MatrixXd skew_sample(Rng& rng, const SkewParams& params, int n);

} // namespace skewmix
