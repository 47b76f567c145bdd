#include "skewmix/truncmom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewmix/errors.hpp"
#include "skewmix/mvn.hpp"
#include "skewmix/mvt.hpp"
#include "skewmix/qmc.hpp"
#include "skewmix/quadrature.hpp"
#include "skewmix/special.hpp"

namespace skewmix {

namespace {

constexpr double kLogFloor = -745.0;

// quantile of a standard normal conditioned on Z > t, at fraction q
double truncated_std_normal_quantile(double t, double q) {
    if (t > 0.0) {
        const double tail = (1.0 - q) * norm_cdf(-t); // = Phi(-z)
        return -norm_quantile(std::clamp(tail, 1e-300, 1.0 - 1e-16));
    }
    const double cdf_t = norm_cdf(t);
    const double v = cdf_t + q * (1.0 - cdf_t);
    return norm_quantile(std::clamp(v, 1e-300, 1.0 - 1e-16));
}

// ---- exact small-r paths ------------------------------------------------

// univariate: U ~ N(m, s^2) | U > 0
void tn_moments_1d(double m, double s, double& log_prob, double& mean, double& second) {
    const double beta = m / s; // P(U > 0) = Phi(beta)
    log_prob = norm_logcdf(beta);
    const double ratio = mills_ratio_lower(beta); // phi(beta)/Phi(beta)
    mean = m + s * ratio;
    second = m * m + s * s + m * s * ratio;
}

// bivariate Tallis formulas: Z ~ N(0, R), R unit diagonal, truncated to Z > b
void tallis_2d(double b1, double b2, double rho, bool want_moments,
               double& log_prob, Eigen::Vector2d& ez, Eigen::Matrix2d& ezz) {
    const double alpha = bvn_upper(b1, b2, rho);
    if (alpha <= 0.0) {
        // deep truncation: sequential-conditioning approximation, only
        // reachable below the exp(-745) floor of the bivariate rule
        const double z2 = (b2 - rho * b1) / std::sqrt(std::max(1.0 - rho * rho, 1e-14));
        log_prob = norm_logcdf(-b1) + norm_logcdf(-z2);
        if (want_moments) {
            ez << b1, b2; // collapse to the corner
            ezz = ez * ez.transpose();
        }
        return;
    }
    log_prob = std::log(alpha);
    if (!want_moments) return;

    const double om = std::sqrt(std::max(1.0 - rho * rho, 1e-14));
    const double f1 = norm_pdf(b1) * norm_cdf(-(b2 - rho * b1) / om);
    const double f2 = norm_pdf(b2) * norm_cdf(-(b1 - rho * b2) / om);
    const double q12 = (b1 * b1 - 2.0 * rho * b1 * b2 + b2 * b2) / (om * om);
    const double pdf2 = std::exp(-0.5 * q12) / (2.0 * 3.14159265358979323846 * om);

    ez[0] = (f1 + rho * f2) / alpha;
    ez[1] = (rho * f1 + f2) / alpha;
    ezz(0, 0) = 1.0 + (b1 * f1 + rho * rho * b2 * f2 + rho * om * om * pdf2) / alpha;
    ezz(1, 1) = 1.0 + (b2 * f2 + rho * rho * b1 * f1 + rho * om * om * pdf2) / alpha;
    ezz(0, 1) = ezz(1, 0) = rho + (rho * b1 * f1 + rho * b2 * f2 + om * om * pdf2) / alpha;
}

void tn_moments_2d(const Eigen::VectorXd& shift, const Eigen::MatrixXd& cov, bool want_moments,
                   double& log_prob, Eigen::VectorXd& mean, Eigen::MatrixXd& second) {
    const double s1 = std::sqrt(cov(0, 0));
    const double s2 = std::sqrt(cov(1, 1));
    const double rho = cov(0, 1) / (s1 * s2);
    const double b1 = -shift[0] / s1;
    const double b2 = -shift[1] / s2;
    Eigen::Vector2d ez = Eigen::Vector2d::Zero();
    Eigen::Matrix2d ezz = Eigen::Matrix2d::Zero();
    tallis_2d(b1, b2, std::clamp(rho, -1.0, 1.0), want_moments, log_prob, ez, ezz);
    if (!want_moments) return;
    const Eigen::Vector2d m(shift[0], shift[1]);
    const Eigen::Vector2d d(s1, s2);
    mean = m + d.asDiagonal() * ez;
    second = m * mean.transpose() + mean * m.transpose() - m * m.transpose() +
             d.asDiagonal() * ezz * d.asDiagonal();
}

// ---- QMC path for r >= 3 -------------------------------------------------

struct QmcAccum {
    double sum_w = 0.0;
    double sum_inv = 0.0;
    double sum_log = 0.0;
    Eigen::VectorXd sum_u;
    Eigen::MatrixXd sum_uu;
};

// one sequential-conditioning pass; `scale_root` multiplies the cov factor
// (sqrt of the mixing value), inv_w weights the latent moment accumulators
void qmc_orthant_point(const Eigen::VectorXd& shift, const Eigen::MatrixXd& cov_lower,
                       const double* q, double scale_root, double inv_w, double log_w,
                       bool want_moments, QmcAccum& acc, Eigen::VectorXd& z) {
    const int r = static_cast<int>(shift.size());
    double weight = 1.0;
    for (int i = 0; i < r; ++i) {
        double dot = 0.0;
        for (int j = 0; j < i; ++j) dot += cov_lower(i, j) * z[j];
        const double t = (-shift[i] - scale_root * dot) / (scale_root * cov_lower(i, i));
        const double e = norm_cdf(-t);
        if (e <= 0.0) { weight = 0.0; break; }
        weight *= e;
        z[i] = truncated_std_normal_quantile(t, q[i]);
    }
    if (weight <= 0.0) return;
    acc.sum_w += weight;
    acc.sum_inv += weight * inv_w;
    acc.sum_log += weight * log_w;
    if (want_moments) {
        Eigen::VectorXd u = shift;
        for (int i = 0; i < r; ++i) {
            double dot = 0.0;
            for (int j = 0; j <= i; ++j) dot += cov_lower(i, j) * z[j];
            u[i] += scale_root * dot;
        }
        acc.sum_u += weight * inv_w * u;
        acc.sum_uu += weight * inv_w * u * u.transpose();
    }
}

} // namespace

OrthantMoments orthant_moments(const Eigen::VectorXd& shift,
                               const SpdMatrix& cov,
                               bool want_moments,
                               int qmc_points) {
    const int r = cov.dim();
    if (shift.size() != r) throw contract_error("orthant_moments: dimension mismatch");

    OrthantMoments out;
    if (want_moments) {
        out.mean = Eigen::VectorXd::Zero(r);
        out.second = Eigen::MatrixXd::Zero(r, r);
    }

    if (r == 1) {
        double lp, m1, m2;
        tn_moments_1d(shift[0], cov.lower_factor()(0, 0), lp, m1, m2);
        out.log_prob = lp;
        if (want_moments) {
            out.mean[0] = m1;
            out.second(0, 0) = m2;
        }
        return out;
    }
    if (r == 2) {
        tn_moments_2d(shift, cov.dense(), want_moments, out.log_prob, out.mean, out.second);
        return out;
    }

    const QmcLattice lattice(r, 1);
    std::vector<double> q(r);
    Eigen::VectorXd z(r);
    QmcAccum acc;
    acc.sum_u = Eigen::VectorXd::Zero(r);
    acc.sum_uu = Eigen::MatrixXd::Zero(r, r);
    for (int k = 0; k < qmc_points; ++k) {
        lattice.point(0, static_cast<std::uint64_t>(k) + 1, q.data());
        qmc_orthant_point(shift, cov.lower_factor(), q.data(), 1.0, 1.0, 0.0, want_moments, acc, z);
    }
    const double prob = acc.sum_w / qmc_points;
    out.log_prob = prob > 0.0 ? std::log(prob) : kLogFloor * r;
    if (want_moments && acc.sum_w > 0.0) {
        out.mean = acc.sum_u / acc.sum_w;
        out.second = acc.sum_uu / acc.sum_w;
    }
    return out;
}

LatentStats scale_mixture_latent_stats(const Eigen::VectorXd& shift,
                                       double a_post,
                                       double b_post,
                                       const SpdMatrix& cov,
                                       bool want_moments,
                                       const std::vector<double>* ig_unit_quantiles,
                                       int points_per_shift,
                                       int n_shifts) {
    const int r = cov.dim();
    if (shift.size() != r) throw contract_error("scale_mixture_latent_stats: dimension mismatch");
    LatentStats out;
    out.e_u_inv_w = Eigen::VectorXd::Zero(r);
    out.e_uu_inv_w = Eigen::MatrixXd::Zero(r, r);

    if (r <= 2) {
        // deterministic quadrature over log w; integrand is the IG(a, b)
        // density times the orthant probability at scale w cov
        const double log_ig_norm = a_post * std::log(b_post) - std::lgamma(a_post);
        const Eigen::MatrixXd dense = cov.dense();
        const int n_extras = want_moments ? (2 + r + r * r) : 0;
        double lp_node;
        Eigen::VectorXd mean_node(r);
        Eigen::MatrixXd second_node(r, r);

        auto node = [&](double t) {
            const double w = std::exp(t);
            if (r == 1) {
                double m1, m2;
                tn_moments_1d(shift[0], std::sqrt(w * dense(0, 0)), lp_node, m1, m2);
                mean_node[0] = m1;
                second_node(0, 0) = m2;
            } else {
                tn_moments_2d(shift, (w * dense).eval(), want_moments, lp_node, mean_node, second_node);
            }
            return w;
        };

        auto log_f = [&](double t) {
            const double w = node(t);
            return lp_node + log_ig_norm - (a_post + 1.0) * std::log(w) - b_post / w + t;
        };
        auto extras = [&](double t, double* x) {
            const double w = std::exp(t);
            x[0] = 1.0 / w;
            x[1] = t; // log w
            for (int i = 0; i < r; ++i) x[2 + i] = mean_node[i] / w;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) x[2 + r + i * r + j] = second_node(i, j) / w;
        };

        const double center = std::log(b_post / (a_post + 1.0));
        const auto res = integrate_log_bell(log_f, center, 1e-9, n_extras,
                                            want_moments ? std::function<void(double, double*)>(extras)
                                                         : nullptr);
        out.log_skew_factor = std::min(res.log_integral, 0.0);
        if (want_moments) {
            out.e_inv_w = res.ratios[0];
            out.e_log_w = res.ratios[1];
            for (int i = 0; i < r; ++i) out.e_u_inv_w[i] = res.ratios[2 + i];
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) out.e_uu_inv_w(i, j) = res.ratios[2 + r + i * r + j];
        }
        return out;
    }

    // r >= 3: joint QMC over (w, u)
    const QmcLattice lattice(r + 1, n_shifts);
    std::vector<double> own_table;
    const std::vector<double>* table = ig_unit_quantiles;
    if (table == nullptr) {
        own_table = ig_quantile_table(a_post, points_per_shift, n_shifts, r + 1);
        table = &own_table;
    }

    std::vector<double> q(r + 1);
    Eigen::VectorXd z(r);
    QmcAccum acc;
    acc.sum_u = Eigen::VectorXd::Zero(r);
    acc.sum_uu = Eigen::MatrixXd::Zero(r, r);
    for (int s = 0; s < n_shifts; ++s) {
        for (int k = 0; k < points_per_shift; ++k) {
            lattice.point(s, static_cast<std::uint64_t>(k) + 1, q.data());
            const double w = b_post * (*table)[static_cast<std::size_t>(s) * points_per_shift + k];
            qmc_orthant_point(shift, cov.lower_factor(), q.data() + 1, std::sqrt(w), 1.0 / w,
                              std::log(w), want_moments, acc, z);
        }
    }
    const double denom = static_cast<double>(points_per_shift) * n_shifts;
    const double factor = acc.sum_w / denom;
    out.log_skew_factor = factor > 0.0 ? std::log(factor) : kLogFloor * r;
    if (acc.sum_w > 0.0) {
        out.e_inv_w = acc.sum_inv / acc.sum_w;
        out.e_log_w = acc.sum_log / acc.sum_w;
        if (want_moments) {
            out.e_u_inv_w = acc.sum_u / acc.sum_w;
            out.e_uu_inv_w = acc.sum_uu / acc.sum_w;
        }
    }
    return out;
}

} // namespace skewmix
