#include "skewmix/mvn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "skewmix/errors.hpp"
#include "skewmix/qmc.hpp"
#include "skewmix/special.hpp"

namespace skewmix {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// Gauss-Legendre half rules used by the bivariate algorithm.
const double kGlW6[3] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
const double kGlX6[3] = {-0.9324695142031522, -0.6612093864662647, -0.2386191860831970};
const double kGlW12[6] = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                          0.2031674267230659, 0.2334925365383547, 0.2491470458134029};
const double kGlX12[6] = {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
                          -0.5873179542866171, -0.3678314989981802, -0.1252334085114692};
const double kGlW20[10] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                           0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                           0.1316886384491766,  0.1420961093183820,  0.1491729864726037,
                           0.1527533871307258};
const double kGlX20[10] = {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
                           -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
                           -0.5108670019508271, -0.3737060887154195, -0.2277858511416451,
                           -0.07652652113349734};

} // namespace

double bvn_upper(double dh, double dk, double r) {
    if (!(std::fabs(r) <= 1.0)) throw domain_error("bvn_upper: |rho| must be <= 1");

    const double* w;
    const double* x;
    int lg;
    if (std::fabs(r) < 0.3) {
        w = kGlW6; x = kGlX6; lg = 3;
    } else if (std::fabs(r) < 0.75) {
        w = kGlW12; x = kGlX12; lg = 6;
    } else {
        w = kGlW20; x = kGlX20; lg = 10;
    }

    double h = dh;
    double k = dk;
    double hk = h * k;
    double bvn = 0.0;

    if (std::fabs(r) < 0.925) {
        if (std::fabs(r) > 0.0) {
            const double hs = (h * h + k * k) / 2.0;
            const double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double sn = std::sin(asr * (is * x[i] + 1.0) / 2.0);
                    bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (2.0 * kTwoPi);
        }
        return bvn + norm_cdf(-h) * norm_cdf(-k);
    }

    // |r| >= 0.925: expansion about the singular r = +-1 limit
    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    if (std::fabs(r) < 1.0) {
        const double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        const double bs = (h - k) * (h - k);
        const double c = (4.0 - hk) / 8.0;
        const double d = (12.0 - hk) / 16.0;
        double asr = -(bs / as + hk) / 2.0;
        if (asr > -100.0) {
            bvn = a * std::exp(asr) *
                  (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
        }
        if (-hk < 100.0) {
            const double b = std::sqrt(bs);
            bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * norm_cdf(-b / a) * b *
                   (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
        }
        a /= 2.0;
        for (int i = 0; i < lg; ++i) {
            for (int is = -1; is <= 1; is += 2) {
                const double xs = a * (is * x[i] + 1.0) * a * (is * x[i] + 1.0);
                const double rs = std::sqrt(1.0 - xs);
                asr = -(bs / xs + hk) / 2.0;
                if (asr > -100.0) {
                    const double sp = 1.0 + c * xs * (1.0 + d * xs);
                    const double ep = std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs;
                    bvn += a * w[i] * std::exp(asr) * (ep - sp);
                }
            }
        }
        bvn = -bvn / kTwoPi;
    }
    if (r > 0.0) {
        bvn += norm_cdf(-std::max(h, k));
    } else {
        bvn = -bvn;
        if (k > h) bvn += norm_cdf(k) - norm_cdf(h);
    }
    return std::clamp(bvn, 0.0, 1.0);
}

double bvn_cdf(double x, double y, double rho) {
    return bvn_upper(-x, -y, rho);
}

double mvn_cdf_sov(const Eigen::VectorXd& upper_std,
                   const Eigen::MatrixXd& corr_lower,
                   int points_per_shift,
                   int n_shifts,
                   double* error_estimate) {
    const int d = static_cast<int>(upper_std.size());
    const QmcLattice lattice(std::max(d - 1, 1), n_shifts);

    std::vector<double> u(std::max(d - 1, 1));
    std::vector<double> y(d);
    std::vector<double> shift_mean(n_shifts, 0.0);

    for (int s = 0; s < n_shifts; ++s) {
        double acc = 0.0;
        for (int kpt = 0; kpt < points_per_shift; ++kpt) {
            lattice.point(s, static_cast<std::uint64_t>(kpt) + 1, u.data());
            double prod = norm_cdf(upper_std[0] / corr_lower(0, 0));
            double e_prev = prod;
            for (int i = 1; i < d; ++i) {
                // next conditional sample from the previous slab
                double q = u[i - 1] * e_prev;
                q = std::clamp(q, 1e-300, 1.0 - 1e-16);
                y[i - 1] = norm_quantile(q);
                double dot = 0.0;
                for (int j = 0; j < i; ++j) dot += corr_lower(i, j) * y[j];
                const double e_i = norm_cdf((upper_std[i] - dot) / corr_lower(i, i));
                prod *= e_i;
                e_prev = e_i;
            }
            acc += prod;
        }
        shift_mean[s] = acc / points_per_shift;
    }

    const double mean = std::accumulate(shift_mean.begin(), shift_mean.end(), 0.0) / n_shifts;
    if (error_estimate != nullptr) {
        double var = 0.0;
        for (double m : shift_mean) var += (m - mean) * (m - mean);
        var /= std::max(n_shifts - 1, 1) * static_cast<double>(n_shifts);
        *error_estimate = 3.0 * std::sqrt(var);
    }
    return std::clamp(mean, 0.0, 1.0);
}

double mvn_cdf(const Eigen::VectorXd& point,
               const Eigen::VectorXd& mean,
               const SpdMatrix& cov,
               double tol) {
    const int r = cov.dim();
    if (point.size() != r || mean.size() != r) {
        throw contract_error("mvn_cdf: dimension mismatch between point, mean and cov");
    }
    if (!(tol >= 1e-10 && tol <= 1e-2)) {
        throw contract_error("mvn_cdf: tol must lie in [1e-10, 1e-2]");
    }

    const Eigen::MatrixXd sigma = cov.dense();
    Eigen::VectorXd sd(r), z(r);
    for (int i = 0; i < r; ++i) {
        sd[i] = std::sqrt(sigma(i, i));
        const double zi = (point[i] - mean[i]) / sd[i];
        // clamp: Phi(9) differs from 1 by ~1e-19, far below the smallest tol
        z[i] = std::clamp(std::isnan(zi) ? 0.0 : zi, -38.0, 9.0);
        if (point[i] - mean[i] == std::numeric_limits<double>::infinity()) z[i] = 9.0;
    }

    if (r == 1) return norm_cdf(z[0]);
    if (r == 2) {
        const double rho = sigma(0, 1) / (sd[0] * sd[1]);
        return bvn_cdf(z[0], z[1], rho);
    }

    // r >= 3: sort variables by limit (tightest first), then SOV over QMC
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return z[a] < z[b]; });

    Eigen::MatrixXd corr(r, r);
    Eigen::VectorXd zp(r);
    for (int i = 0; i < r; ++i) {
        zp[i] = z[order[i]];
        for (int j = 0; j < r; ++j) {
            corr(i, j) = sigma(order[i], order[j]) / (sd[order[i]] * sd[order[j]]);
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(corr);
    if (llt.info() != Eigen::Success) {
        throw not_positive_definite_error("mvn_cdf: correlation matrix not positive definite");
    }
    const Eigen::MatrixXd lower = llt.matrixL();

    const int n_shifts = 8;
    double err = 0.0;
    double value = 0.0;
    for (int n = 256; n <= (1 << 17); n *= 2) {
        value = mvn_cdf_sov(zp, lower, n, n_shifts, &err);
        if (err <= tol) return value;
    }
    throw numeric_error("mvn_cdf: point budget exhausted before reaching tol", err);
}

} // namespace skewmix
