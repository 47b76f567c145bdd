#include "skewmix/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewmix/bessel.hpp"
#include "skewmix/errors.hpp"
#include "skewmix/mvn.hpp"
#include "skewmix/quadrature.hpp"
#include "skewmix/special.hpp"

namespace skewmix {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
} // namespace

double gh_sym_logpdf(const Eigen::VectorXd& y,
                     const Eigen::VectorXd& mu,
                     const SpdMatrix& sigma,
                     const GigParams& mixing) {
    const int p = sigma.dim();
    if (y.size() != p || mu.size() != p) {
        throw contract_error("gh_sym_logpdf: dimension mismatch");
    }
    const double eta = sigma.inv_quad(y - mu);
    const double psi = mixing.psi, chi = mixing.chi, lam = mixing.lambda;
    const double half_p = 0.5 * p;

    return (0.5 * lam - 0.25 * p) * std::log((chi + eta) / psi) +
           0.5 * lam * std::log(psi / chi) +
           log_bessel_k(lam - half_p, std::sqrt((chi + eta) * psi)) -
           half_p * kLog2Pi - 0.5 * sigma.log_det() -
           log_bessel_k(lam, std::sqrt(chi * psi));
}

double gh_sym_logcdf(const Eigen::VectorXd& point,
                     const Eigen::VectorXd& mean,
                     const SpdMatrix& cov,
                     const GigParams& mixing,
                     double tol) {
    const int r = cov.dim();
    if (point.size() != r || mean.size() != r) {
        throw contract_error("gh_sym_logcdf: dimension mismatch");
    }
    if (!(tol > 0.0)) throw contract_error("gh_sym_logcdf: tol must be positive");

    const Eigen::MatrixXd dense = cov.dense();
    const Eigen::VectorXd diff = point - mean;
    const double log_norm = gig_log_norm(mixing);

    // log Phi_r(diff; 0, w cov) as a function of w, by dimension
    Eigen::VectorXd sd(r);
    for (int i = 0; i < r; ++i) sd[i] = std::sqrt(dense(i, i));
    double rho = 0.0;
    Eigen::MatrixXd corr_lower;
    if (r == 2) {
        rho = dense(0, 1) / (sd[0] * sd[1]);
    } else if (r >= 3) {
        Eigen::MatrixXd corr(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) corr(i, j) = dense(i, j) / (sd[i] * sd[j]);
        Eigen::LLT<Eigen::MatrixXd> llt(corr);
        if (llt.info() != Eigen::Success) {
            throw not_positive_definite_error("gh_sym_logcdf: covariance not positive definite");
        }
        corr_lower = llt.matrixL();
    }

    auto log_phi_r = [&](double w) -> double {
        const double s = 1.0 / std::sqrt(w);
        if (r == 1) return norm_logcdf(diff[0] / sd[0] * s);
        if (r == 2) {
            const double v = bvn_cdf(std::clamp(diff[0] / sd[0] * s, -38.0, 38.0),
                                     std::clamp(diff[1] / sd[1] * s, -38.0, 38.0), rho);
            return v > 0.0 ? std::log(v) : -745.0 * r;
        }
        Eigen::VectorXd z(r);
        for (int i = 0; i < r; ++i) z[i] = std::clamp(diff[i] / sd[i] * s, -38.0, 9.0);
        const double v = mvn_cdf_sov(z, corr_lower, 512, 4);
        return v > 0.0 ? std::log(v) : -745.0 * r;
    };

    auto log_f = [&](double t) {
        const double w = std::exp(t);
        return log_phi_r(w) + log_norm + (mixing.lambda - 1.0) * std::log(w) -
               0.5 * (mixing.psi * w + mixing.chi / w) + t;
    };

    const double center = std::log(gig_mode(mixing));
    const auto res = integrate_log_bell(log_f, center, tol);
    return std::min(res.log_integral, 0.0);
}

double gh_sym_cdf(const Eigen::VectorXd& point,
                  const Eigen::VectorXd& mean,
                  const SpdMatrix& cov,
                  const GigParams& mixing,
                  double tol) {
    return std::exp(gh_sym_logcdf(point, mean, cov, mixing, tol));
}

std::pair<SpdMatrix, GigParams> gh_rescale(const SpdMatrix& sigma,
                                           const GigParams& mixing,
                                           double k) {
    if (!(k > 0.0)) throw contract_error("gh_rescale: k must be positive");
    return {sigma.scaled(k), GigParams(k * mixing.psi, mixing.chi / k, mixing.lambda)};
}

} // namespace skewmix
