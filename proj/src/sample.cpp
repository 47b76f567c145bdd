#include "skewmix/sample.hpp"

#include <cmath>

#include "skewmix/errors.hpp"
#include "skewmix/gig.hpp"

namespace skewmix {

namespace {

void check(const SkewParams& params, SkewFamily family, int n, const char* op) {
    if (params.family != family) {
        throw contract_error(std::string(op) + ": params carry the wrong family tag");
    }
    if (n < 1) throw contract_error(std::string(op) + ": n must be >= 1");
}

// one convolution draw: mu + scale_root * (delta |u0| + chol(sigma) z)
void convolution_row(Rng& rng, const SkewParams& sp, double scale_root,
                     Eigen::VectorXd& z0, Eigen::VectorXd& z1, Eigen::MatrixXd& out, int row) {
    const int p = sp.p();
    const int r = sp.r();
    for (int j = 0; j < r; ++j) z0[j] = std::fabs(rng.normal());
    for (int j = 0; j < p; ++j) z1[j] = rng.normal();
    out.row(row) = (sp.mu + scale_root * (sp.delta * z0 +
                    sp.sigma.lower_factor().triangularView<Eigen::Lower>() * z1)).transpose();
}

} // namespace

Eigen::MatrixXd cfusn_sample(Rng& rng, const SkewParams& params, int n) {
    check(params, SkewFamily::Cfusn, n, "cfusn_sample");
    Eigen::MatrixXd out(n, params.p());
    Eigen::VectorXd z0(params.r()), z1(params.p());
    for (int i = 0; i < n; ++i) convolution_row(rng, params, 1.0, z0, z1, out, i);
    return out;
}

Eigen::MatrixXd cfust_sample(Rng& rng, const SkewParams& params, int n) {
    check(params, SkewFamily::Cfust, n, "cfust_sample");
    Eigen::MatrixXd out(n, params.p());
    Eigen::VectorXd z0(params.r()), z1(params.p());
    for (int i = 0; i < n; ++i) {
        const double w = 0.5 * params.nu / rng.gamma(0.5 * params.nu);
        convolution_row(rng, params, std::sqrt(w), z0, z1, out, i);
    }
    return out;
}

Eigen::MatrixXd hth_sample(Rng& rng, const SkewParams& params, int n) {
    check(params, SkewFamily::Hth, n, "hth_sample");
    const GigParams mixing(params.omega, params.omega, params.gig_index);
    Eigen::MatrixXd out(n, params.p());
    Eigen::VectorXd z0(params.r()), z1(params.p());
    for (int i = 0; i < n; ++i) {
        const double w = gig_sample(rng, mixing, 1)[0];
        convolution_row(rng, params, std::sqrt(w), z0, z1, out, i);
    }
    return out;
}

Eigen::MatrixXd skew_sample(Rng& rng, const SkewParams& params, int n) {
    switch (params.family) {
        case SkewFamily::Cfusn: return cfusn_sample(rng, params, n);
        case SkewFamily::Cfust: return cfust_sample(rng, params, n);
        case SkewFamily::Hth: return hth_sample(rng, params, n);
        case SkewFamily::Smcfusn:
            throw contract_error("skew_sample: no sampler surface for the generic scale mixture");
    }
    throw contract_error("skew_sample: unknown family");
}

} // namespace skewmix
