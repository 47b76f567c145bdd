#pragma once

#include <functional>
#include <vector>

namespace skewmix {

/// Result of integrating a positive "bell" integrand given in log space.
struct LogBellResult {
    double log_integral;          // log of the integral of exp(log_f)
    double rel_error;             // estimated relative error
    std::vector<double> ratios;   // per-extra: integral(extra*f) / integral(f)
    int evaluations = 0;
};

/// Integrates exp(log_f(t)) dt over the whole real line by the trapezoid
/// rule with step halving, together with expectation ratios of optional
/// side quantities.
///
/// The integrand must be a smooth "bell": unimodal up to mild shoulders with
/// super-polynomial decay in t at both ends (true of every scale-mixture
/// integrand here after the w = exp(t) substitution). `center` is a starting
/// abscissa somewhere near the bulk; the scan locates the actual mode.
///
/// When `n_extras > 0`, `extras(t, out)` fills out[0..n_extras) with side
/// integrand factors x_j(t); the result's ratios hold
/// E[x_j] = (int x_j exp(log_f)) / (int exp(log_f)).
///
/// Throws numeric_error (carrying the achieved error) if `rel_tol` cannot be
/// met within the evaluation budget.
LogBellResult integrate_log_bell(
    const std::function<double(double)>& log_f,
    double center,
    double rel_tol,
    int n_extras = 0,
    const std::function<void(double, double*)>& extras = nullptr,
    int max_evaluations = 200000);

} // namespace skewmix
