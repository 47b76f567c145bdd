#pragma once

#include <vector>

#include "skewmix/rng.hpp"

namespace skewmix {

/// Parameters of the generalized inverse Gaussian distribution with density
/// proportional to w^{lambda-1} exp(-(psi w + chi / w) / 2) on w > 0.
///
/// psi and chi are strictly positive; boundary cases (gamma / inverse gamma)
/// are reached through explicit limit operations, never by passing zero.
struct GigParams {
    double psi;
    double chi;
    double lambda;

    GigParams(double psi, double chi, double lambda);
};

/// log density of the GIG distribution at w > 0.
double gig_logpdf(double w, const GigParams& params);

/// log of the normalizing constant: the density is
/// exp(gig_log_norm(params)) * w^{lambda-1} * exp(-(psi w + chi/w)/2).
double gig_log_norm(const GigParams& params);

/// E[W] = sqrt(chi/psi) K_{lambda+1}(sqrt(chi psi)) / K_lambda(sqrt(chi psi)).
double gig_mean(const GigParams& params);

/// Mode of the GIG density.
double gig_mode(const GigParams& params);

/// n i.i.d. GIG draws (ratio-of-uniforms family of samplers, regime chosen
/// from the standardized two-parameter form).
std::vector<double> gig_sample(Rng& rng, const GigParams& params, int n);

/// n i.i.d. inverse-gamma draws: density w^{-shape-1} exp(-rate / w), drawn
/// as the reciprocal of a gamma variate.
std::vector<double> inv_gamma_sample(Rng& rng, double shape, double rate, int n);

} // namespace skewmix
