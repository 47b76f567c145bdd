#pragma once

#include <Eigen/Dense>
#include <utility>

#include "skewmix/gig.hpp"
#include "skewmix/spd.hpp"

namespace skewmix {

/// log density of the p-dimensional symmetric generalized hyperbolic
/// distribution: the GIG scale mixture of N(mu, w sigma). Evaluated fully in
/// log space (two log Bessel K calls), so extreme mixing parameters stay
/// finite.
double gh_sym_logpdf(const Eigen::VectorXd& y,
                     const Eigen::VectorXd& mu,
                     const SpdMatrix& sigma,
                     const GigParams& mixing);

/// log of the symmetric GH distribution function: the GIG mixture of
/// mvn_cdf over the scale, by adaptive quadrature on log w. Throws
/// numeric_error carrying the achieved error if tol cannot be met.
double gh_sym_logcdf(const Eigen::VectorXd& point,
                     const Eigen::VectorXd& mean,
                     const SpdMatrix& cov,
                     const GigParams& mixing,
                     double tol = 1e-6);

/// Probability-scale version of gh_sym_logcdf.
double gh_sym_cdf(const Eigen::VectorXd& point,
                  const Eigen::VectorXd& mean,
                  const SpdMatrix& cov,
                  const GigParams& mixing,
                  double tol = 1e-6);

/// The identifiability orbit transform: (sigma, psi, chi) ->
/// (k sigma, k psi, chi / k) leaves the GH distribution unchanged.
std::pair<SpdMatrix, GigParams> gh_rescale(const SpdMatrix& sigma,
                                           const GigParams& mixing,
                                           double k);

} // namespace skewmix
