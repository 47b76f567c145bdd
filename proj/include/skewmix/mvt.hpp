#pragma once

#include <Eigen/Dense>
#include <vector>

#include "skewmix/spd.hpp"

namespace skewmix {

/// Central multivariate t CDF P(T <= point), T ~ t_r(0, scale, dof), as the
/// inverse-gamma scale mixture of mvn_cdf. r = 1 goes through the incomplete
/// beta function, r = 2 through deterministic quadrature over the mixing
/// variable, r >= 3 through the frozen-lattice SOV integrand with the mixing
/// variable as an extra coordinate.
double mvt_cdf(const Eigen::VectorXd& point, const SpdMatrix& scale, double dof,
               double rel_tol = 1e-9, int qmc_points = 2048);

/// Quantile table for the inverse-gamma coordinate of the SOV-t integrand:
/// entry (s, k) is the IG(a, 1) quantile at the lattice coordinate 0 of shift
/// s, point k+1. Shared across observations with the same a = (dof + p) / 2.
std::vector<double> ig_quantile_table(double a, int points_per_shift, int n_shifts, int dim);

} // namespace skewmix
