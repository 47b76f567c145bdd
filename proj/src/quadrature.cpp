#include "skewmix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

constexpr double kLogCutoff = 48.0; // exp(-48) ~ 1.4e-21: negligible tail term
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Accum {
    double scale;                 // common log scale M
    double sum_f = 0.0;           // sum of exp(log_f - M)
    std::vector<double> sum_x;    // sums of extra_j * exp(log_f - M)

    explicit Accum(double scale, int n_extras) : scale(scale), sum_x(n_extras, 0.0) {}

    void add(double log_f, const double* x) {
        if (log_f == kNegInf || log_f - scale < -kLogCutoff) return;
        const double w = std::exp(log_f - scale);
        sum_f += w;
        for (std::size_t j = 0; j < sum_x.size(); ++j) sum_x[j] += w * x[j];
    }
};

} // namespace

LogBellResult integrate_log_bell(
    const std::function<double(double)>& log_f,
    double center,
    double rel_tol,
    int n_extras,
    const std::function<void(double, double*)>& extras,
    int max_evaluations) {
    if (!(rel_tol > 0.0)) throw contract_error("integrate_log_bell: rel_tol must be positive");

    int evals = 0;
    std::vector<double> xbuf(std::max(n_extras, 1), 0.0);
    auto eval = [&](double t, double* x) {
        ++evals;
        const double lf = log_f(t);
        if (n_extras > 0 && lf != kNegInf) extras(t, x);
        return lf;
    };

    // Locate the mode with a coarse walk from the supplied center.
    double t_peak = center;
    double lf_peak = eval(t_peak, xbuf.data());
    {
        const double step = 0.5;
        for (int dir : {+1, -1}) {
            double t = t_peak;
            for (int k = 0; k < 600; ++k) {
                const double tn = t + dir * step;
                const double lf = log_f(tn);
                ++evals;
                if (lf > lf_peak) {
                    lf_peak = lf;
                    t_peak = tn;
                    t = tn;
                } else {
                    break;
                }
            }
        }
    }
    if (lf_peak == kNegInf || !std::isfinite(lf_peak)) {
        throw numeric_error("integrate_log_bell: integrand vanishes near the supplied center");
    }

    // Trapezoid sums at step h, expanding outward until terms are negligible.
    auto sweep = [&](double h, double offset, Accum& acc) {
        // points t_peak + offset + k*h for all integers k, added while relevant
        for (int dir : {+1, -1}) {
            int misses = 0;
            for (int k = (dir > 0 ? 0 : 1); k < 200000; ++k) {
                const double t = t_peak + offset + dir * k * h;
                const double lf = eval(t, xbuf.data());
                if (lf - acc.scale < -kLogCutoff) {
                    if (++misses >= 3) break; // allow brief dips (shoulders)
                } else {
                    misses = 0;
                    acc.add(lf, xbuf.data());
                }
                if (evals > max_evaluations) {
                    throw numeric_error("integrate_log_bell: evaluation budget exceeded",
                                        std::numeric_limits<double>::quiet_NaN());
                }
            }
        }
    };

    double h = 0.5;
    Accum acc(lf_peak, n_extras);
    sweep(h, 0.0, acc);
    double prev = std::log(acc.sum_f * h);
    double rel_err = std::numeric_limits<double>::infinity();

    for (int refine = 0; refine < 12; ++refine) {
        // halve the step: add the midpoints, then compare
        Accum mid(lf_peak, n_extras);
        sweep(h, 0.5 * h, mid);
        acc.sum_f += mid.sum_f;
        for (int j = 0; j < n_extras; ++j) acc.sum_x[j] += mid.sum_x[j];
        h *= 0.5;
        const double cur = std::log(acc.sum_f * h);
        rel_err = std::fabs(cur - prev);
        prev = cur;
        if (refine >= 1 && rel_err <= rel_tol) break;
    }

    if (!(rel_err <= rel_tol)) {
        throw numeric_error("integrate_log_bell: tolerance not reached", rel_err);
    }

    LogBellResult out;
    out.log_integral = lf_peak + prev;
    out.rel_error = rel_err;
    out.evaluations = evals;
    out.ratios.resize(n_extras);
    for (int j = 0; j < n_extras; ++j) out.ratios[j] = acc.sum_x[j] / acc.sum_f;
    return out;
}

} // namespace skewmix
