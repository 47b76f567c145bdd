#pragma once

#include <Eigen/Dense>
#include <vector>

#include "skewmix/spd.hpp"

namespace skewmix {

/// Moments of U ~ N(shift, cov) conditional on U > 0 (componentwise).
struct OrthantMoments {
    double log_prob = 0.0;      // log P(U > 0)
    Eigen::VectorXd mean;       // E[U | U > 0]
    Eigen::MatrixXd second;     // E[U U^T | U > 0]
};

/// r = 1 closed form, r = 2 Tallis formulas over the bivariate normal rule,
/// r >= 3 sequential-conditioning sampling on the frozen QMC lattice.
/// With want_moments = false only log_prob is filled.
OrthantMoments orthant_moments(const Eigen::VectorXd& shift,
                               const SpdMatrix& cov,
                               bool want_moments,
                               int qmc_points = 512);

/// Posterior summaries of the latent pair (W, U) of a scale-mixed skew
/// observation: W ~ IG(a_post, b_post) reweighted by the orthant probability
/// of N(shift, w cov), U the positive-orthant latent vector.
struct LatentStats {
    double log_skew_factor = 0.0;  // log E_w[P(U > 0 | w)]
    double e_inv_w = 1.0;          // E[1/W | y]
    double e_log_w = 0.0;          // E[log W | y]
    Eigen::VectorXd e_u_inv_w;     // E[U / W | y]
    Eigen::MatrixXd e_uu_inv_w;    // E[U U^T / W | y]
};

/// r <= 2 goes through deterministic quadrature over log w with exact
/// truncated-normal moments per node; r >= 3 runs one joint QMC pass with
/// the mixing coordinate folded in. `ig_unit_quantiles`, when non-null,
/// holds IG(a_post, 1) quantiles per lattice point (see ig_quantile_table)
/// so per-observation work stays O(points).
LatentStats scale_mixture_latent_stats(const Eigen::VectorXd& shift,
                                       double a_post,
                                       double b_post,
                                       const SpdMatrix& cov,
                                       bool want_moments,
                                       const std::vector<double>* ig_unit_quantiles = nullptr,
                                       int points_per_shift = 512,
                                       int n_shifts = 1);

} // namespace skewmix
