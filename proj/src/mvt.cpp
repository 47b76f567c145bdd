#include "skewmix/mvt.hpp"

#include <algorithm>
#include <cmath>

#include "skewmix/errors.hpp"
#include "skewmix/gig.hpp"
#include "skewmix/mvn.hpp"
#include "skewmix/qmc.hpp"
#include "skewmix/quadrature.hpp"
#include "skewmix/special.hpp"

namespace skewmix {

namespace {

// log density of IG(a, b) at w
inline double inv_gamma_logpdf(double w, double a, double b) {
    return a * std::log(b) - std::lgamma(a) - (a + 1.0) * std::log(w) - b / w;
}

} // namespace

std::vector<double> ig_quantile_table(double a, int points_per_shift, int n_shifts, int dim) {
    const QmcLattice lattice(dim, n_shifts);
    std::vector<double> table(static_cast<std::size_t>(points_per_shift) * n_shifts);
    std::vector<double> u(dim);
    for (int s = 0; s < n_shifts; ++s) {
        for (int k = 0; k < points_per_shift; ++k) {
            lattice.point(s, static_cast<std::uint64_t>(k) + 1, u.data());
            const double q = std::clamp(u[0], 0x1.0p-53, 1.0 - 0x1.0p-53);
            // W ~ IG(a, b) has quantile b / gamma_q_inv(a, q); store the b = 1 value
            table[static_cast<std::size_t>(s) * points_per_shift + k] = 1.0 / gamma_q_inv(a, q);
        }
    }
    return table;
}

double mvt_cdf(const Eigen::VectorXd& point, const SpdMatrix& scale, double dof,
               double rel_tol, int qmc_points) {
    const int r = scale.dim();
    if (point.size() != r) throw contract_error("mvt_cdf: dimension mismatch");
    if (!(dof > 0.0)) throw contract_error("mvt_cdf: dof must be positive");

    const Eigen::MatrixXd sigma = scale.dense();
    Eigen::VectorXd sd(r), z(r);
    for (int i = 0; i < r; ++i) {
        sd[i] = std::sqrt(sigma(i, i));
        z[i] = point[i] / sd[i];
    }

    if (r == 1) return t_cdf(z[0], dof);

    const double a = 0.5 * dof;
    if (r == 2) {
        const double rho = sigma(0, 1) / (sd[0] * sd[1]);
        auto log_f = [&](double t) {
            const double w = std::exp(t);
            const double s = 1.0 / std::sqrt(w);
            const double phi2 = bvn_cdf(std::clamp(z[0] * s, -38.0, 38.0),
                                        std::clamp(z[1] * s, -38.0, 38.0), rho);
            if (phi2 <= 0.0) return -std::numeric_limits<double>::infinity();
            return std::log(phi2) + inv_gamma_logpdf(w, a, a) + t; // + t: dw = w dt
        };
        const double center = std::log(a / (a + 1.0)); // IG mode
        return std::clamp(std::exp(integrate_log_bell(log_f, center, rel_tol).log_integral), 0.0, 1.0);
    }

    // r >= 3: SOV over (w, y_1..y_{r-1}) on the frozen lattice
    Eigen::MatrixXd corr(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) corr(i, j) = sigma(i, j) / (sd[i] * sd[j]);
    }
    // order by limit, tightest first
    std::vector<int> order(r);
    for (int i = 0; i < r; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return z[x] < z[y]; });
    Eigen::VectorXd zp(r);
    Eigen::MatrixXd corrp(r, r);
    for (int i = 0; i < r; ++i) {
        zp[i] = z[order[i]];
        for (int j = 0; j < r; ++j) corrp(i, j) = corr(order[i], order[j]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(corrp);
    if (llt.info() != Eigen::Success) {
        throw not_positive_definite_error("mvt_cdf: scale matrix not positive definite");
    }
    const Eigen::MatrixXd lower = llt.matrixL();

    const int n_shifts = 8;
    const int n_pts = qmc_points / n_shifts;
    const auto wtab = ig_quantile_table(a, n_pts, n_shifts, r);
    const QmcLattice lattice(r, n_shifts);

    std::vector<double> u(r), y(r);
    double total = 0.0;
    for (int s = 0; s < n_shifts; ++s) {
        double acc = 0.0;
        for (int k = 0; k < n_pts; ++k) {
            lattice.point(s, static_cast<std::uint64_t>(k) + 1, u.data());
            const double w = a * wtab[static_cast<std::size_t>(s) * n_pts + k]; // IG(a, a) draw
            const double inv_root_w = 1.0 / std::sqrt(w);
            double prod = norm_cdf(zp[0] * inv_root_w / lower(0, 0));
            double e_prev = prod;
            for (int i = 1; i < r; ++i) {
                double q = u[i] * e_prev;
                q = std::clamp(q, 1e-300, 1.0 - 1e-16);
                y[i - 1] = norm_quantile(q);
                double dot = 0.0;
                for (int j = 0; j < i; ++j) dot += lower(i, j) * y[j];
                const double e_i = norm_cdf((zp[i] * inv_root_w - dot) / lower(i, i));
                prod *= e_i;
                e_prev = e_i;
            }
            acc += prod;
        }
        total += acc / n_pts;
    }
    return std::clamp(total / n_shifts, 0.0, 1.0);
}

} // namespace skewmix
