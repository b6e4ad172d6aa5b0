#pragma once

namespace pcg::stats {

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
///
/// Series expansion for x < a + 1, Lentz continued fraction otherwise; both
/// iterate to machine precision.
double gamma_q(double a, double x);

/// Upper tail P(X >= statistic) for X ~ chi-square(dof). dof == 0 gives 1.
double chi_square_upper_tail(double statistic, int dof);

} // namespace pcg::stats
