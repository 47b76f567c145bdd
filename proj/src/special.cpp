#include "skewmix/special.hpp"

#include <cmath>
#include <limits>

#include "skewmix/errors.hpp"

namespace skewmix {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727; // log sqrt(2 pi)
} // namespace

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double norm_logcdf(double x) {
    if (x > -1.0) {
        return std::log1p(-0.5 * std::erfc(x / kSqrt2));
    }
    const double c = 0.5 * std::erfc(-x / kSqrt2);
    if (c > 0.0) return std::log(c);
    // erfc underflowed (x < ~ -26.5): asymptotic log Phi(x) ~ -x^2/2 - log(-x) - log sqrt(2 pi)
    const double x2 = x * x;
    return -0.5 * x2 - kLogSqrt2Pi - std::log(-x) + std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw domain_error("norm_quantile: p must lie in (0,1)");
    }
    // Wichura (1988), algorithm AS 241, PPND16.
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

double mills_ratio_lower(double x) {
    if (x > -30.0) {
        return norm_pdf(x) / norm_cdf(x); // erfc stays accurate until ~ -37
    }
    // asymptotic Mills series; truncation below 1e-12 for x <= -30
    const double ix2 = 1.0 / (x * x);
    const double s =
        1.0 - ix2 * (1.0 - 3.0 * ix2 * (1.0 - 5.0 * ix2 * (1.0 - 7.0 * ix2 * (1.0 - 9.0 * ix2))));
    return -x / s;
}

double digamma(double x) {
    if (std::isnan(x) || std::isinf(x)) {
        throw domain_error("digamma: non-finite argument");
    }
    double result = 0.0;
    if (x <= 0.0) {
        if (x == std::floor(x)) throw domain_error("digamma: pole at non-positive integer");
        // reflection: psi(1-x) - psi(x) = pi cot(pi x)
        const double pi = 3.141592653589793238462643;
        result = -pi / std::tan(pi * x);
        x = 1.0 - x;
    }
    while (x < 12.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double ix = 1.0 / x;
    const double ix2 = ix * ix;
    result += std::log(x) - 0.5 * ix -
              ix2 * (1.0 / 12.0 -
                     ix2 * (1.0 / 120.0 -
                            ix2 * (1.0 / 252.0 -
                                   ix2 * (1.0 / 240.0 - ix2 * (1.0 / 132.0 - ix2 * 691.0 / 32760.0)))));
    return result;
}

namespace {

// series expansion of P(a,x), valid for x < a + 1
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// modified Lentz continued fraction for Q(a,x), valid for x >= a + 1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw domain_error("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw domain_error("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double gamma_q_inv(double a, double q) {
    if (!(a > 0.0)) throw domain_error("gamma_q_inv: need a > 0");
    if (!(q > 0.0 && q < 1.0)) throw domain_error("gamma_q_inv: q must lie in (0,1)");
    // Wilson-Hilferty starting point
    const double z = norm_quantile(1.0 - q);
    const double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    double x = a * t * t * t;
    if (!(x > 0.0) || !std::isfinite(x)) x = a;

    const double lg = std::lgamma(a);
    // Newton on f(x) = Q(a,x) - q; f'(x) = -x^{a-1} e^{-x} / Gamma(a)
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
        const double f = gamma_q(a, x) - q;
        if (f > 0.0) lo = x; else hi = x;
        const double logpdf = (a - 1.0) * std::log(x) - x - lg;
        double step = f * std::exp(-logpdf); // f / (-f') with f' = -pdf
        double xn = x + step;
        if (!(xn > lo) || !(xn < hi) || !std::isfinite(xn)) {
            xn = std::isfinite(hi) ? 0.5 * (lo + hi) : (lo > 0.0 ? 2.0 * lo + 1.0 : 1.0);
        }
        if (std::fabs(xn - x) <= 1e-14 * (std::fabs(x) + 1e-300)) { x = xn; break; }
        x = xn;
    }
    return x;
}

double inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw domain_error("inc_beta: need a, b > 0");
    if (x < 0.0 || x > 1.0) throw domain_error("inc_beta: x must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);

    // use the symmetry to stay in the fast-converging region
    if (x > (a + 1.0) / (a + b + 2.0)) {
        return 1.0 - inc_beta(b, a, 1.0 - x);
    }

    // modified Lentz for the standard continued fraction
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        const double dm = static_cast<double>(m);
        double num = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        num = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return front * h / a;
}

double t_cdf(double x, double dof) {
    if (!(dof > 0.0)) throw domain_error("t_cdf: dof must be positive");
    if (x == 0.0) return 0.5;
    const double w = dof / (dof + x * x);
    const double half_tail = 0.5 * inc_beta(0.5 * dof, 0.5, w);
    return (x > 0.0) ? 1.0 - half_tail : half_tail;
}

double t_logpdf(double x, double dof) {
    if (!(dof > 0.0)) throw domain_error("t_logpdf: dof must be positive");
    const double pi = 3.141592653589793238462643;
    return std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
           0.5 * std::log(dof * pi) - 0.5 * (dof + 1.0) * std::log1p(x * x / dof);
}

double kolmogorov_q(double t) {
    if (t <= 0.0) return 1.0;
    if (t < 1.0) {
        // Jacobi-transformed series for the CDF, fast for small t
        const double pi = 3.141592653589793238462643;
        double p = 0.0;
        for (int k = 1; k <= 20; k += 2) {
            const double term = std::exp(-k * k * pi * pi / (8.0 * t * t));
            p += term;
            if (term < 1e-18) break;
        }
        p *= std::sqrt(2.0 * pi) / t;
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

} // namespace skewmix
