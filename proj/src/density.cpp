#include "skewmix/density.hpp"

#include <cmath>
#include <limits>

#include "skewmix/errors.hpp"
#include "skewmix/gh.hpp"
#include "skewmix/mvn.hpp"
#include "skewmix/mvt.hpp"
#include "skewmix/quadrature.hpp"
#include "skewmix/special.hpp"
#include "skewmix/truncmom.hpp"

namespace skewmix {

namespace {

constexpr double kLog2 = 0.6931471805599453094;
constexpr double kLog2Pi = 1.8378770664093454836;

void check_family(const SkewParams& params, SkewFamily expected, const char* op) {
    if (params.family != expected) {
        throw contract_error(std::string(op) + ": params carry the wrong family tag");
    }
}

double mvn_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, const SpdMatrix& cov) {
    const double d = cov.inv_quad(y - mu);
    return -0.5 * (cov.dim() * kLog2Pi + cov.log_det() + d);
}

double mvt_logpdf_scale(double maha, double log_det, int p, double dof) {
    return std::lgamma(0.5 * (dof + p)) - std::lgamma(0.5 * dof) -
           0.5 * p * std::log(dof * 3.14159265358979323846) - 0.5 * log_det -
           0.5 * (dof + p) * std::log1p(maha / dof);
}

} // namespace

double cfusn_logpdf(const Eigen::VectorXd& y, const SkewParams& params) {
    check_family(params, SkewFamily::Cfusn, "cfusn_logpdf");
    if (y.size() != params.p()) throw contract_error("cfusn_logpdf: dimension mismatch");
    const int r = params.r();
    const Eigen::VectorXd shift = params.latent_shift(y);
    const auto om = orthant_moments(shift, params.scale_latent, false);
    return r * kLog2 + mvn_logpdf(y, params.mu, params.scale_total) + om.log_prob;
}

double cfust_logpdf(const Eigen::VectorXd& y, const SkewParams& params) {
    check_family(params, SkewFamily::Cfust, "cfust_logpdf");
    if (y.size() != params.p()) throw contract_error("cfust_logpdf: dimension mismatch");
    const int p = params.p();
    const int r = params.r();
    const double nu = params.nu;
    const double maha = params.maha_total(y);
    const Eigen::VectorXd shift = params.latent_shift(y);

    const double scale = std::sqrt((nu + p) / (nu + maha));
    const double tail = mvt_cdf(scale * shift, params.scale_latent, nu + p);
    const double log_tail = tail > 0.0 ? std::log(tail) : -745.0 * r;
    return r * kLog2 + mvt_logpdf_scale(maha, params.scale_total.log_det(), p, nu) + log_tail;
}

double smcfusn_logpdf(const Eigen::VectorXd& y, const SkewParams& params, double tol) {
    check_family(params, SkewFamily::Smcfusn, "smcfusn_logpdf");
    if (y.size() != params.p()) throw contract_error("smcfusn_logpdf: dimension mismatch");
    const int p = params.p();
    const int r = params.r();
    const GigParams& mix = *params.mixing;
    const double maha = params.maha_total(y);
    const Eigen::VectorXd shift = params.latent_shift(y);
    const double log_gig_norm = gig_log_norm(mix);

    auto log_f = [&](double t) {
        const double w = std::exp(t);
        const auto om = orthant_moments(shift, params.scale_latent.scaled(w), false);
        const double log_phi = -0.5 * (p * kLog2Pi + p * t + params.scale_total.log_det() + maha / w);
        const double log_gig = log_gig_norm + (mix.lambda - 1.0) * t - 0.5 * (mix.psi * w + mix.chi / w);
        return log_phi + om.log_prob + log_gig + t;
    };

    // start the node walk where the symmetric integrand peaks
    const GigParams post(mix.psi, mix.chi + maha, mix.lambda - 0.5 * p);
    const auto res = integrate_log_bell(log_f, std::log(gig_mode(post)), tol);
    return r * kLog2 + res.log_integral;
}

double hth_logpdf(const Eigen::VectorXd& y, const SkewParams& params, double tol,
                  HthEtaScale eta_scale) {
    check_family(params, SkewFamily::Hth, "hth_logpdf");
    if (y.size() != params.p()) throw contract_error("hth_logpdf: dimension mismatch");
    const int p = params.p();
    const int r = params.r();
    const double om = params.omega;
    const double lam = params.gig_index;

    const double eta = (eta_scale == HthEtaScale::TotalScale) ? params.maha_total(y)
                                                              : params.sigma.inv_quad(y - params.mu);
    const double gamma = std::sqrt(om * (om + eta));
    const Eigen::VectorXd arg = params.latent_shift(y) * std::pow(om / (om + eta), 0.25);

    const double log_sym = gh_sym_logpdf(y, params.mu, params.scale_total, GigParams(om, om, lam));
    const double log_skew = gh_sym_logcdf(arg, Eigen::VectorXd::Zero(r), params.scale_latent,
                                          GigParams(gamma, gamma, lam - 0.5 * p), tol);
    return r * kLog2 + log_sym + log_skew;
}

double skew_logpdf(const Eigen::VectorXd& y, const SkewParams& params, double tol) {
    switch (params.family) {
        case SkewFamily::Cfusn: return cfusn_logpdf(y, params);
        case SkewFamily::Cfust: return cfust_logpdf(y, params);
        case SkewFamily::Hth: return hth_logpdf(y, params, tol);
        case SkewFamily::Smcfusn: return smcfusn_logpdf(y, params, tol);
    }
    throw contract_error("skew_logpdf: unknown family");
}

SkewParams hth_limit_params(const SkewParams& base, double k) {
    check_family(base, SkewFamily::Cfust, "hth_limit_params");
    if (!(k > 0.0 && k <= 1.0)) throw contract_error("hth_limit_params: need 0 < k <= 1");
    // Scale and skewness inflate so that the shrinking mixing variable
    // (concentration k nu, all mass near w ~ k) restores the skew-t scales:
    // w Sigma/k -> Sigma and sqrt(w) Delta/sqrt(k) -> Delta in distribution.
    return SkewParams::hth(base.mu, base.sigma.scaled(1.0 / k), base.delta / std::sqrt(k),
                           k * base.nu, -0.5 * base.nu);
}

} // namespace skewmix
