#include "skewmix/verify.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "skewmix/density.hpp"
#include "skewmix/errors.hpp"
#include "skewmix/gh.hpp"
#include "skewmix/gig.hpp"
#include "skewmix/parallel.hpp"
#include "skewmix/quadrature.hpp"
#include "skewmix/rng.hpp"
#include "skewmix/sample.hpp"
#include "skewmix/special.hpp"

namespace skewmix {

void SuiteResult::add(std::string name, double value, double tol) {
    const bool ok = value <= tol;
    checks.push_back({std::move(name), value, tol, ok});
    pass = pass && ok;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "identifiability", "gig_limit", "hth_limit", "reductions", "normalization"};
    return names;
}

namespace {

Eigen::MatrixXd random_spd(Rng& rng, int p) {
    Eigen::MatrixXd a(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) a(i, j) = rng.normal();
    return a * a.transpose() + 0.3 * Eigen::MatrixXd::Identity(p, p);
}

SuiteResult suite_identifiability(std::uint64_t seed) {
    SuiteResult out;
    out.suite = "identifiability";
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 1 + static_cast<int>(rng.below(3));
        Eigen::VectorXd mu(p), y(p);
        for (int j = 0; j < p; ++j) {
            mu[j] = 2.0 * rng.normal();
            y[j] = mu[j] + 3.0 * rng.normal();
        }
        const SpdMatrix sigma(random_spd(rng, p));
        const GigParams mix(0.2 + 3.0 * rng.uniform(), 0.2 + 3.0 * rng.uniform(),
                            -2.0 + 4.0 * rng.uniform());
        const double base = gh_sym_logpdf(y, mu, sigma, mix);
        for (double k : {0.1, 1.0, 10.0}) {
            const auto [sig_k, mix_k] = gh_rescale(sigma, mix, k);
            const double lp = gh_sym_logpdf(y, mu, sig_k, mix_k);
            worst = std::max(worst, std::fabs(lp - base) / std::max(1.0, std::fabs(base)));
        }
    }
    out.add("gh_logpdf_orbit_max_rel_dev", worst, 1e-10);
    return out;
}

SuiteResult suite_gig_limit(std::uint64_t) {
    SuiteResult out;
    out.suite = "gig_limit";
    const double nu = 4.0;
    const GigParams near_ig(1e-8, nu, -0.5 * nu);
    const double shape = 0.5 * nu, rate = 0.5 * nu;
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double w = 0.05 + (20.0 - 0.05) * i / 400.0;
        const double lg = gig_logpdf(w, near_ig);
        const double li = shape * std::log(rate) - std::lgamma(shape) -
                          (shape + 1.0) * std::log(w) - rate / w;
        worst = std::max(worst, std::fabs(std::expm1(lg - li)));
    }
    out.add("gig_vs_inverse_gamma_max_rel_dev", worst, 1e-4);
    return out;
}

SuiteResult suite_hth_limit(std::uint64_t) {
    SuiteResult out;
    out.suite = "hth_limit";

    // p = 1 instance
    {
        const auto base = SkewParams::cfust(Eigen::VectorXd::Zero(1), SpdMatrix::identity(1),
                                            Eigen::MatrixXd::Constant(1, 1, 2.0), 4.0);
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        double final_sup = 0.0;
        for (double k : {1e-1, 1e-2, 1e-3}) {
            const SkewParams limit = hth_limit_params(base, k);
            double sup = 0.0;
            for (int i = 0; i <= 40; ++i) {
                Eigen::VectorXd y(1);
                y[0] = -5.0 + 10.0 * i / 40.0;
                const double f_limit = std::exp(hth_logpdf(y, limit, 1e-9));
                const double f_t = std::exp(cfust_logpdf(y, base));
                sup = std::max(sup, std::fabs(f_limit - f_t));
            }
            monotone = monotone && (sup < prev);
            prev = sup;
            final_sup = sup;
        }
        out.add("p1_sup_err_at_k_1e-3", final_sup, 1e-2);
        out.add("p1_monotone_violations", monotone ? 0.0 : 1.0, 0.5);
    }

    // p = 2 instance
    {
        Eigen::VectorXd mu(2);
        mu << 0.3, -0.2;
        Eigen::MatrixXd sig(2, 2);
        sig << 1.0, 0.3, 0.3, 0.8;
        Eigen::MatrixXd delta(2, 2);
        delta << 1.2, 0.2, -0.4, 0.9;
        const auto base = SkewParams::cfust(mu, SpdMatrix(sig), delta, 4.0);
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        double final_sup = 0.0;
        for (double k : {1e-1, 1e-2, 1e-3}) {
            const SkewParams limit = hth_limit_params(base, k);
            double sup = 0.0;
            for (int i = 0; i <= 10; ++i) {
                for (int j = 0; j <= 10; ++j) {
                    Eigen::VectorXd y(2);
                    y[0] = mu[0] - 4.0 + 8.0 * i / 10.0;
                    y[1] = mu[1] - 4.0 + 8.0 * j / 10.0;
                    const double f_limit = std::exp(hth_logpdf(y, limit, 1e-8));
                    const double f_t = std::exp(cfust_logpdf(y, base));
                    sup = std::max(sup, std::fabs(f_limit - f_t));
                }
            }
            monotone = monotone && (sup < prev);
            prev = sup;
            final_sup = sup;
        }
        out.add("p2_sup_err_at_k_1e-3", final_sup, 1e-2);
        out.add("p2_monotone_violations", monotone ? 0.0 : 1.0, 0.5);
    }
    return out;
}

SuiteResult suite_reductions(std::uint64_t seed) {
    SuiteResult out;
    out.suite = "reductions";
    Rng rng(seed);

    const int p = 2;
    Eigen::VectorXd mu(p);
    mu << 0.4, -0.7;
    const SpdMatrix sigma(random_spd(rng, p));
    const Eigen::MatrixXd zero_delta = Eigen::MatrixXd::Zero(p, p);

    auto grid_point = [&](int i) {
        Eigen::VectorXd y(p);
        y[0] = mu[0] - 3.0 + 6.0 * (i % 5) / 4.0;
        y[1] = mu[1] - 3.0 + 6.0 * (i / 5) / 4.0;
        return y;
    };

    // CFUSN -> normal
    {
        const auto params = SkewParams::cfusn(mu, sigma, zero_delta);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const Eigen::VectorXd y = grid_point(i);
            const double skew = cfusn_logpdf(y, params);
            const double sym = -0.5 * (p * 1.8378770664093454836 + sigma.log_det() +
                                       sigma.inv_quad(y - mu));
            worst = std::max(worst, std::fabs(skew - sym));
        }
        out.add("cfusn_to_normal_max_abs_dev", worst, 1e-12);
    }

    // CFUST -> t
    {
        const double nu = 5.0;
        const auto params = SkewParams::cfust(mu, sigma, zero_delta, nu);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const Eigen::VectorXd y = grid_point(i);
            const double skew = cfust_logpdf(y, params);
            const double maha = sigma.inv_quad(y - mu);
            const double sym = std::lgamma(0.5 * (nu + p)) - std::lgamma(0.5 * nu) -
                               0.5 * p * std::log(nu * 3.14159265358979323846) -
                               0.5 * sigma.log_det() - 0.5 * (nu + p) * std::log1p(maha / nu);
            worst = std::max(worst, std::fabs(skew - sym));
        }
        out.add("cfust_to_t_max_abs_dev", worst, 1e-12);
    }

    // HTH -> symmetric GH
    {
        const auto params = SkewParams::hth(mu, sigma, zero_delta, 2.0, -2.0);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const Eigen::VectorXd y = grid_point(i);
            const double skew = hth_logpdf(y, params, 1e-9);
            const double sym = gh_sym_logpdf(y, mu, sigma, GigParams(2.0, 2.0, -2.0));
            worst = std::max(worst, std::fabs(skew - sym));
        }
        out.add("hth_to_gh_max_abs_dev", worst, 1e-5);
    }

    // SMCFUSN -> symmetric scale mixture (GH for GIG mixing)
    {
        const GigParams mix(1.0, 1.5, -1.0);
        const auto params = SkewParams::smcfusn(mu, sigma, zero_delta, mix);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const Eigen::VectorXd y = grid_point(i);
            const double skew = smcfusn_logpdf(y, params, 1e-9);
            const double sym = gh_sym_logpdf(y, mu, sigma, mix);
            worst = std::max(worst, std::fabs(skew - sym));
        }
        out.add("smcfusn_to_gh_max_abs_dev", worst, 1e-5);
    }
    return out;
}

double normalization_1d(const std::function<double(double)>& logpdf) {
    const auto res = integrate_log_bell(logpdf, 0.0, 1e-9);
    return std::fabs(std::expm1(res.log_integral));
}

double normalization_2d_mc(Rng& rng, const std::function<double(const Eigen::VectorXd&)>& logpdf,
                           const Eigen::VectorXd& center, double spread, int n_points) {
    // importance sampling with a wide bivariate t(3) proposal
    const double prop_dof = 3.0;
    Eigen::MatrixXd prop_scale = spread * spread * Eigen::MatrixXd::Identity(2, 2);
    const auto proposal = SkewParams::cfust(center, SpdMatrix(prop_scale),
                                            Eigen::MatrixXd::Zero(2, 1), prop_dof);
    const Eigen::MatrixXd draws = cfust_sample(rng, proposal, n_points);

    std::vector<double> contrib(n_points);
    parallel_for(n_points, [&](int i) {
        const Eigen::VectorXd y = draws.row(i).transpose();
        const double lq = cfust_logpdf(y, proposal);
        contrib[i] = std::exp(logpdf(y) - lq);
    });
    double sum = 0.0;
    for (double c : contrib) sum += c;
    return std::fabs(sum / n_points - 1.0);
}

SuiteResult suite_normalization(std::uint64_t seed) {
    SuiteResult out;
    out.suite = "normalization";
    Rng rng(seed);

    // p = 1 instances, quadrature
    {
        Eigen::VectorXd mu1(1);
        mu1 << 0.2;
        const SpdMatrix s1(Eigen::MatrixXd::Constant(1, 1, 1.3));
        const Eigen::MatrixXd d1 = Eigen::MatrixXd::Constant(1, 1, 1.5);

        const auto cfusn1 = SkewParams::cfusn(mu1, s1, d1);
        out.add("cfusn_p1_norm_dev",
                normalization_1d([&](double t) {
                    Eigen::VectorXd y(1);
                    y[0] = t;
                    return cfusn_logpdf(y, cfusn1);
                }),
                1e-5);

        const auto cfust1 = SkewParams::cfust(mu1, s1, d1, 4.0);
        out.add("cfust_p1_norm_dev",
                normalization_1d([&](double t) {
                    Eigen::VectorXd y(1);
                    y[0] = t;
                    return cfust_logpdf(y, cfust1);
                }),
                1e-5);

        const auto hth1 = SkewParams::hth(mu1, s1, d1, 2.0, -2.0);
        out.add("hth_p1_norm_dev",
                normalization_1d([&](double t) {
                    Eigen::VectorXd y(1);
                    y[0] = t;
                    return hth_logpdf(y, hth1, 1e-9);
                }),
                1e-5);

        const auto smc1 = SkewParams::smcfusn(mu1, s1, d1, GigParams(2.0, 3.0, -1.5));
        out.add("smcfusn_p1_norm_dev",
                normalization_1d([&](double t) {
                    Eigen::VectorXd y(1);
                    y[0] = t;
                    return smcfusn_logpdf(y, smc1, 1e-9);
                }),
                1e-5);
    }

    // p = 2 instances, importance Monte Carlo with 1e6 points
    {
        const int n_points = 1000000;
        Eigen::VectorXd mu(2);
        mu << 0.1, -0.3;
        Eigen::MatrixXd sig(2, 2);
        sig << 1.0, 0.25, 0.25, 0.7;
        Eigen::MatrixXd delta(2, 2);
        delta << 1.0, 0.3, -0.2, 0.8;
        const SpdMatrix sigma(sig);
        Eigen::VectorXd center = mu + delta.rowwise().sum() * 0.8;

        const auto cfusn2 = SkewParams::cfusn(mu, sigma, delta);
        out.add("cfusn_p2_mc_dev",
                normalization_2d_mc(rng, [&](const Eigen::VectorXd& y) {
                    return cfusn_logpdf(y, cfusn2);
                }, center, 3.0, n_points),
                0.01);

        const auto cfust2 = SkewParams::cfust(mu, sigma, delta, 4.0);
        out.add("cfust_p2_mc_dev",
                normalization_2d_mc(rng, [&](const Eigen::VectorXd& y) {
                    return cfust_logpdf(y, cfust2);
                }, center, 3.5, n_points),
                0.01);

        const auto hth2 = SkewParams::hth(mu, sigma, delta, 2.0, -2.0);
        out.add("hth_p2_mc_dev",
                normalization_2d_mc(rng, [&](const Eigen::VectorXd& y) {
                    return hth_logpdf(y, hth2, 1e-7);
                }, center, 3.5, n_points),
                0.01);

        const auto smc2 = SkewParams::smcfusn(mu, sigma, delta, GigParams(1.0, 1.0, -2.0));
        out.add("smcfusn_p2_mc_dev",
                normalization_2d_mc(rng, [&](const Eigen::VectorXd& y) {
                    return smcfusn_logpdf(y, smc2, 1e-7);
                }, center, 3.5, n_points),
                0.01);
    }
    return out;
}

} // namespace

SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed) {
    if (name == "identifiability") return suite_identifiability(seed);
    if (name == "gig_limit") return suite_gig_limit(seed);
    if (name == "hth_limit") return suite_hth_limit(seed);
    if (name == "reductions") return suite_reductions(seed);
    if (name == "normalization") return suite_normalization(seed);
    throw contract_error("unknown verify suite: " + name);
}

std::string suites_to_json(const std::vector<SuiteResult>& results, int indent) {
    nlohmann::json j;
    j["suites"] = nlohmann::json::array();
    bool all = true;
    for (const auto& s : results) {
        nlohmann::json js;
        js["suite"] = s.suite;
        js["pass"] = s.pass;
        js["checks"] = nlohmann::json::array();
        for (const auto& c : s.checks) {
            js["checks"].push_back({{"name", c.name},
                                    {"achieved", c.value},
                                    {"tolerance", c.tol},
                                    {"pass", c.pass}});
        }
        j["suites"].push_back(std::move(js));
        all = all && s.pass;
    }
    j["pass"] = all;
    return j.dump(indent);
}

} // namespace skewmix
