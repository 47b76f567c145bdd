#include "skewmix/gig.hpp"

#include <cmath>

#include "skewmix/bessel.hpp"
#include "skewmix/errors.hpp"

namespace skewmix {

GigParams::GigParams(double psi, double chi, double lambda)
    : psi(psi), chi(chi), lambda(lambda) {
    if (!(psi > 0.0) || !(chi > 0.0) || !std::isfinite(psi) || !std::isfinite(chi) ||
        !std::isfinite(lambda)) {
        throw contract_error("GigParams: psi and chi must be strictly positive and finite");
    }
}

double gig_log_norm(const GigParams& p) {
    const double root = std::sqrt(p.chi * p.psi);
    return 0.5 * p.lambda * std::log(p.psi / p.chi) - std::log(2.0) -
           log_bessel_k(p.lambda, root);
}

double gig_logpdf(double w, const GigParams& p) {
    if (!(w > 0.0)) throw domain_error("gig_logpdf: w must be positive");
    return gig_log_norm(p) + (p.lambda - 1.0) * std::log(w) - 0.5 * (p.psi * w + p.chi / w);
}

double gig_mean(const GigParams& p) {
    const double root = std::sqrt(p.chi * p.psi);
    return std::sqrt(p.chi / p.psi) *
           std::exp(log_bessel_k(p.lambda + 1.0, root) - log_bessel_k(p.lambda, root));
}

double gig_mode(const GigParams& p) {
    // stationary point of the log density
    const double lm1 = p.lambda - 1.0;
    return (lm1 + std::sqrt(lm1 * lm1 + p.psi * p.chi)) / p.psi;
}

namespace {

// ---- samplers for the standardized form x^{lambda-1} e^{-(omega/2)(x+1/x)},
//      lambda >= 0 (Dagpunar / Lehner / Hoermann-Leydold regimes) ----

double std_mode(double lambda, double omega) {
    if (lambda >= 1.0) {
        return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
    }
    return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// log sqrt(f(x)) up to the mode normalization handled by the callers
inline double half_log_f(double x, double t, double s) {
    return t * std::log(x) - s * (x + 1.0 / x);
}

double sample_rou_noshift(Rng& rng, double lambda, double omega) {
    const double t = 0.5 * (lambda - 1.0);
    const double s = 0.25 * omega;
    const double xm = std_mode(lambda, omega);
    const double nc = half_log_f(xm, t, s);
    // maximum of x sqrt(f(x)) sits at the positive root of
    // (omega/2) y^2 - (lambda+1) y - omega/2 = 0
    const double ym = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
    const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);

    for (;;) {
        const double u = um * rng.uniform_pos();
        const double v = rng.uniform_pos();
        const double x = u / v;
        if (std::log(v) <= half_log_f(x, t, s) - nc) return x;
    }
}

double sample_rou_shift(Rng& rng, double lambda, double omega) {
    const double t = 0.5 * (lambda - 1.0);
    const double s = 0.25 * omega;
    const double xm = std_mode(lambda, omega);
    const double nc = half_log_f(xm, t, s);

    // extremes of (x - xm) sqrt(f(x)): roots of the cubic
    // y^3 + a y^2 + b y + c with the coefficients below (Dagpunar 1989)
    const double a = -(2.0 * (lambda + 1.0) / omega + xm);
    const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
    const double c = xm;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double phi = std::acos(-q / (2.0 * std::sqrt(-p * p * p / 27.0)));
    const double fac = 2.0 * std::sqrt(-p / 3.0);
    const double y_hi = fac * std::cos(phi / 3.0) - a / 3.0;
    const double y_lo = fac * std::cos(phi / 3.0 + 4.0 * 3.14159265358979323846 / 3.0) - a / 3.0;

    const double u_plus = (y_hi - xm) * std::exp(half_log_f(y_hi, t, s) - nc);
    const double u_minus = (y_lo - xm) * std::exp(half_log_f(y_lo, t, s) - nc);

    for (;;) {
        const double u = u_minus + rng.uniform() * (u_plus - u_minus);
        const double v = rng.uniform_pos();
        const double x = u / v + xm;
        if (x > 0.0 && std::log(v) <= half_log_f(x, t, s) - nc) return x;
    }
}

// Constant hat over the log-concave part, power/exponential hats in the
// tails; covers 0 <= lambda < 1 with small omega where the ROU rectangles
// degenerate (Hoermann & Leydold 2014).
double sample_concentrated(Rng& rng, double lambda, double omega) {
    const double xm = std_mode(lambda, omega);
    const double x0 = omega / (1.0 - lambda);

    const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
    const double area0 = k0 * x0;

    double k1 = 0.0, area1 = 0.0, k2, area2;
    if (x0 >= 2.0 / omega) {
        k2 = std::pow(x0, lambda - 1.0);
        area2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
    } else {
        k1 = std::exp(-omega);
        area1 = (lambda == 0.0)
                    ? k1 * std::log(2.0 / (omega * omega))
                    : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
        k2 = std::pow(2.0 / omega, lambda - 1.0);
        area2 = k2 * 2.0 * std::exp(-1.0) / omega;
    }
    const double total = area0 + area1 + area2;

    for (;;) {
        double v = total * rng.uniform_pos();
        double x, hat;
        if (v <= area0) {
            x = x0 * v / area0;
            hat = k0;
        } else if ((v -= area0) <= area1) {
            if (lambda == 0.0) {
                x = omega * std::exp(std::exp(omega) * v);
                hat = k1 / x;
            } else {
                x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
                hat = k1 * std::pow(x, lambda - 1.0);
            }
        } else {
            v -= area1;
            const double left = std::max(x0, 2.0 / omega);
            x = -2.0 / omega * std::log(std::exp(-omega * left / 2.0) - omega / (2.0 * k2) * v);
            hat = k2 * std::exp(-omega * x / 2.0);
        }
        if (!(x > 0.0) || !std::isfinite(x)) continue;
        const double u = rng.uniform_pos() * hat;
        if (std::log(u) <= (lambda - 1.0) * std::log(x) - 0.5 * omega * (x + 1.0 / x)) return x;
    }
}

double sample_std_gig(Rng& rng, double lambda, double omega) {
    if (lambda > 2.0 || omega > 3.0) return sample_rou_shift(rng, lambda, omega);
    if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) return sample_rou_noshift(rng, lambda, omega);
    return sample_concentrated(rng, lambda, omega);
}

} // namespace

std::vector<double> gig_sample(Rng& rng, const GigParams& params, int n) {
    if (n < 1) throw contract_error("gig_sample: n must be >= 1");
    const double alpha = std::sqrt(params.chi / params.psi);
    const double omega = std::sqrt(params.chi * params.psi);
    const double lambda = std::fabs(params.lambda);

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double x = sample_std_gig(rng, lambda, omega);
        out[i] = (params.lambda < 0.0) ? alpha / x : alpha * x;
    }
    return out;
}

std::vector<double> inv_gamma_sample(Rng& rng, double shape, double rate, int n) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw contract_error("inv_gamma_sample: shape and rate must be positive");
    }
    if (n < 1) throw contract_error("inv_gamma_sample: n must be >= 1");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = rate / rng.gamma(shape);
    }
    return out;
}

} // namespace skewmix
