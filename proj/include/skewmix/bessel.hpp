#pragma once

namespace skewmix {

/// log K_order(x), the log of the modified Bessel function of the second kind.
///
/// Fully log-scaled: finite results for x in (1e-300, 1e300) and
/// |order| <= 5000, where K itself would over/underflow. Uses the symmetry
/// K_{-a} = K_a, a Temme series (x <= 2) or Steed continued fraction (x > 2)
/// for the fractional order, upward recurrence to the target order, and the
/// uniform large-order asymptotic expansion once |order| exceeds
/// kBesselAsymptoticOrder.
double log_bessel_k(double order, double x);

/// Switchover order between the recurrence and the uniform asymptotic path.
inline constexpr double kBesselAsymptoticOrder = 150.0;

} // namespace skewmix
