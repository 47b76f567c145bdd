#include "skewmix/bessel.hpp"

#include <cmath>
#include <limits>

#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kEulerGamma = 0.5772156649015328606065121;

// Chebyshev-free evaluation of the two auxiliary functions of Temme's series:
//   gam1(mu) = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu)
//   gam2(mu) = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2
// mu in [-0.5, 0.5]. Near mu = 0 the difference cancels; use the Taylor
// series of 1/Gamma(1+z) = 1 + g z + c2 z^2 + ... there.
void temme_gammas(double mu, double& gam1, double& gam2) {
    if (std::fabs(mu) < 1e-3) {
        // 1/Gamma(1+z) = 1 + c1 z + c2 z^2 + c3 z^3 + c4 z^4 + ...
        const double c1 = kEulerGamma;
        const double c2 = -0.6558780715202538811; // (gamma^2 - pi^2/6)/2
        const double c3 = -0.0420026350340952355;
        const double c4 = 0.1665386113822914895;
        const double mu2 = mu * mu;
        gam1 = -(c1 + c3 * mu2);            // odd coefficients survive the difference
        gam2 = 1.0 + c2 * mu2 + c4 * mu2 * mu2; // even ones survive the average
    } else {
        const double gp = 1.0 / std::tgamma(1.0 + mu);
        const double gm = 1.0 / std::tgamma(1.0 - mu);
        gam1 = (gm - gp) / (2.0 * mu);
        gam2 = (gm + gp) / 2.0;
    }
}

// Temme's series for K_mu(x) and K_{mu+1}(x), x <= 2, |mu| <= 1/2.
// Returns values on the natural scale (no overflow risk in this range).
void bessel_k_temme(double mu, double x, double& kmu, double& kmu1) {
    const double x2 = 0.5 * x;
    const double lx2 = std::log(x2);
    const double pimu = kPi * mu;
    const double fact = (std::fabs(pimu) < 1e-12) ? 1.0 : pimu / std::sin(pimu);

    double gam1, gam2;
    temme_gammas(mu, gam1, gam2);

    const double e = -mu * lx2;                       // (x/2)^{-mu} = exp(e)
    const double inv_gamma_plus = gam2 - mu * gam1;   // 1/Gamma(1+mu)
    const double inv_gamma_minus = gam2 + mu * gam1;  // 1/Gamma(1-mu)

    double ff = fact * (gam1 * std::cosh(e) + gam2 * ((std::fabs(e) < 1e-12)
                          ? -lx2 * (1.0 + e * e / 6.0)
                          : std::sinh(e) / e * -lx2));
    double sum = ff;
    const double c0 = std::exp(e);                 // (x/2)^{-mu}
    double p = 0.5 * c0 / inv_gamma_plus;          // 0.5 (x/2)^{-mu} Gamma(1+mu)
    double q = 0.5 / (c0 * inv_gamma_minus);       // 0.5 (x/2)^{+mu} Gamma(1-mu)
    double c = 1.0;
    double d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= 400; ++i) {
        const double di = static_cast<double>(i);
        ff = (di * ff + p + q) / (di * di - mu * mu);
        c *= d / di;
        p /= di - mu;
        q /= di + mu;
        const double del = c * ff;
        sum += del;
        const double del1 = c * (p - di * ff);
        sum1 += del1;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    kmu = sum;
    kmu1 = sum1 * 2.0 / x;
}

// Steed/Thompson-Barnett CF2 for x > 2, |mu| <= 1/2.
// Produces log K_mu and the ratio K_{mu+1}/K_mu.
void bessel_k_cf2(double mu, double x, double& log_kmu, double& ratio) {
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double a1 = 0.25 - mu2;
    double q1 = 0.0, q2 = 1.0;
    double a = -a1;
    double c = a1;
    double q = c;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 15000; ++i) {
        const double di = static_cast<double>(i);
        a -= 2.0 * (di - 1.0);
        c = -a * c / di;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 1e-17) break;
    }
    h = a1 * h;
    // K_mu = sqrt(pi/(2x)) e^{-x} / s, K_{mu+1}/K_mu = (mu + x + 1/2 - h)/x
    log_kmu = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(s);
    ratio = (mu + x + 0.5 - h) / x;
}

// Uniform large-order asymptotic (Olver): K_nu(nu z) for nu >> 1.
double log_bessel_k_uniform(double nu, double x) {
    const double z = x / nu;
    const double root = std::hypot(1.0, z); // sqrt(1+z^2) without overflow
    const double t = 1.0 / root;
    const double eta = root + std::log(z) - std::log1p(root);
    const double t2 = t * t;
    // Debye polynomials u1..u4
    const double u1 = t * (3.0 - 5.0 * t2) / 24.0;
    const double u2 = t2 * (81.0 - t2 * (462.0 - 385.0 * t2)) / 1152.0;
    const double u3 = t * t2 * (30375.0 - t2 * (369603.0 - t2 * (765765.0 - 425425.0 * t2))) / 414720.0;
    const double u4 = t2 * t2 *
                      (4465125.0 - t2 * (94121676.0 - t2 * (349922430.0 - t2 * (446185740.0 - 185910725.0 * t2)))) /
                      39813120.0;
    const double inv = 1.0 / nu;
    const double series = 1.0 + inv * (-u1 + inv * (u2 + inv * (-u3 + inv * u4)));
    return 0.5 * std::log(kPi / (2.0 * nu)) - nu * eta + 0.5 * std::log(t) + std::log(series);
}

} // namespace

double log_bessel_k(double order, double x) {
    if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(order)) {
        throw domain_error("log_bessel_k: need finite order and x > 0");
    }
    double nu = std::fabs(order); // K_{-a} = K_a

    if (nu >= kBesselAsymptoticOrder) {
        return log_bessel_k_uniform(nu, x);
    }

    // split nu = mu + n with mu in [-1/2, 1/2]
    const int n = static_cast<int>(std::lround(nu));
    const double mu = nu - n;

    double log_k0, log_k1;
    if (x <= 2.0) {
        double k0, k1;
        bessel_k_temme(mu, x, k0, k1);
        log_k0 = std::log(k0);
        log_k1 = std::log(k1);
    } else {
        double ratio;
        bessel_k_cf2(mu, x, log_k0, ratio);
        log_k1 = log_k0 + std::log(ratio);
    }
    if (n == 0) return log_k0;

    // upward recurrence K_{m+1} = K_{m-1} + (2 m / x) K_m, carried as
    // (log scale, scaled pair) to avoid overflow for large n / small x
    double scale = log_k0;
    double km = 1.0;                       // K_{mu} / e^{scale}
    double kp = std::exp(log_k1 - scale);  // K_{mu+1} / e^{scale}
    for (int j = 1; j < n; ++j) {
        const double next = km + (2.0 * (mu + j) / x) * kp;
        km = kp;
        kp = next;
        if (kp > 1e250) {
            const double f = 1.0 / kp;
            km *= f;
            kp = 1.0;
            scale -= std::log(f);
        }
    }
    return scale + std::log(kp);
}

} // namespace skewmix
