#pragma once

#include <cstdint>

namespace steklov {

// Scalar kernel t(s) = 2s (sinh(s) cosh(s) - s) / (sinh^2(s) - s^2).
// Defined for all s > 0 with limit 4 as s -> 0+; asymptotically t(s) ~ 2s.
// Evaluation switches between a Taylor series (s < 0.5), the direct
// sinh/cosh formula, and an exp(-2s)-scaled form (s >= 20) so that no
// intermediate overflows and the relative error stays <= 1e-13.
double t_profile(double s);

// t'(s) for s >= 1, where the paper-side monotonicity proof applies.
// Strictly positive on that branch.
double t_profile_derivative(double s);

// Inverse of t_profile on the monotone branch s >= 1: returns s with
// t(s) = t to relative residual <= 1e-12 (safeguarded Newton, bisection
// fallback). Requires t >= t_profile(1).
double h_inverse(double t);

// Volume of the unit ball in R^m: pi^{m/2} / Gamma(m/2 + 1).
double unit_ball_volume(int m);

enum class ProfileKind { Y, Z };

// Clamped-end profile along the cylinder axis:
//   Y(0) = Y(l_n) = 0, Y'(0) = 1, Y'(l_n) = 0,
//   Y'''' - 2 eta^2 Y'' + eta^4 Y = 0 on [0, l_n].
// The Z profile (cosine base family) has the identical functional form;
// the kind tag only records which spectral family produced it.
struct BoundaryProfile {
  double eta;     // base frequency sqrt(alpha), 1/length
  double height;  // l_n
  ProfileKind kind = ProfileKind::Y;
};

// Evaluates the profile at x_n in [0, height]. Overflow-safe for
// eta*height up to ~700 via exponential scaling.
double boundary_profile_eval(const BoundaryProfile& p, double x_n);

// Y''(0) = 2 eta (eta l_n - sinh(eta l_n) cosh(eta l_n)) / (sinh^2(eta l_n) - (eta l_n)^2).
// Satisfies the identity Y''(0) = -t_profile(eta l_n) / l_n.
double boundary_profile_second_derivative_at_zero(const BoundaryProfile& p);

namespace detail {
// Branch internals, exposed for the branch-continuity test at s_switch.
double t_profile_direct(double s);
double t_profile_scaled(double s);
double t_profile_taylor(double s);
inline constexpr double kTaylorSwitch = 0.5;
inline constexpr double kScaledSwitch = 20.0;
}  // namespace detail

}  // namespace steklov
