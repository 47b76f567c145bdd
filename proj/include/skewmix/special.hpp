#pragma once

namespace skewmix {

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF, accurate in both tails (erfc based).
double norm_cdf(double x);

/// log of the standard normal CDF; usable down to x ~ -3e2 without underflow.
double norm_logcdf(double x);

/// Inverse standard normal CDF (Wichura AS 241, double precision branch).
/// p in (0,1); p outside -> domain error.
double norm_quantile(double p);

/// phi(x)/Phi(x), the inverse Mills ratio of the lower tail, stable for
/// x -> -inf.
double mills_ratio_lower(double x);

/// Digamma function for real x (reflection + asymptotic series).
double digamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Solves Q(a, x) = q for x. q in (0,1).
double gamma_q_inv(double a, double q);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double inc_beta(double a, double b, double x);

/// Student t CDF with dof degrees of freedom (location 0, scale 1).
double t_cdf(double x, double dof);

/// Student t log density (location 0, scale 1).
double t_logpdf(double x, double dof);

/// Survival function of the Kolmogorov distribution: Q(t) = P(K > t).
double kolmogorov_q(double t);

} // namespace skewmix
