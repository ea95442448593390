#include "steklov/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace steklov {

namespace detail {

// num = s sinh(2s) - 2s^2 = sum_{k>=1} 2^{2k+1} s^{2k+2} / (2k+1)!
// den = (cosh(2s) - 1)/2 - s^2 = sum_{k>=2} 2^{2k-1} s^{2k} / (2k)!
// Both series converge fast for s < 0.5; eight terms leave the truncation
// far below 1e-16 relative.
double t_profile_taylor(double s) {
  const double s2 = s * s;
  double num = 0.0, den = 0.0;
  double num_term = 4.0 / 3.0 * s2 * s2;            // k = 1 term of num
  double den_term = s2 * s2 / 3.0;                  // k = 2 term of den
  for (int k = 1; k <= 9; ++k) {
    num += num_term;
    num_term *= 4.0 * s2 / ((2 * k + 2) * (2 * k + 3));
    den += den_term;
    den_term *= 4.0 * s2 / ((2 * k + 3) * (2 * k + 4));
  }
  return num / den;
}

double t_profile_direct(double s) {
  const double sh = std::sinh(s);
  const double sc = std::sinh(2.0 * s) / 2.0;  // sinh(s) cosh(s)
  return 2.0 * s * (sc - s) / (sh * sh - s * s);
}

// Numerator and denominator scaled by 4 exp(-2s); only exp(-2s) and
// exp(-4s) appear, so nothing overflows for any s.
double t_profile_scaled(double s) {
  const double e2 = std::exp(-2.0 * s);
  const double e4 = e2 * e2;
  const double num = 1.0 - e4 - 4.0 * s * e2;
  const double den = 1.0 + e4 - (4.0 * s * s + 2.0) * e2;
  return 2.0 * s * num / den;
}

}  // namespace detail

double t_profile(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::domain_error("t_profile: s must be positive and finite");
  if (s < detail::kTaylorSwitch) return detail::t_profile_taylor(s);
  if (s < detail::kScaledSwitch) return detail::t_profile_direct(s);
  return detail::t_profile_scaled(s);
}

double t_profile_derivative(double s) {
  if (!(s >= 1.0) || !std::isfinite(s))
    throw std::domain_error("t_profile_derivative: requires s >= 1 (monotone branch)");
  if (s < detail::kScaledSwitch) {
    const double sh = std::sinh(s);
    const double ch = std::cosh(s);
    const double den = sh * sh - s * s;
    const double theta = sh * sh * sh * ch + 3.0 * s * s * sh * ch -
                         3.0 * s * sh * sh - s * s * s * (sh * sh + ch * ch);
    return 2.0 * theta / (den * den);
  }
  // d/ds of 2s A/B with A = 1 - e^{-4s} - 4s e^{-2s},
  // B = 1 + e^{-4s} - (4s^2 + 2) e^{-2s}.
  const double e2 = std::exp(-2.0 * s);
  const double e4 = e2 * e2;
  const double a = 1.0 - e4 - 4.0 * s * e2;
  const double b = 1.0 + e4 - (4.0 * s * s + 2.0) * e2;
  const double da = 4.0 * e4 + (8.0 * s - 4.0) * e2;
  const double db = -4.0 * e4 + (8.0 * s * s - 8.0 * s + 4.0) * e2;
  return 2.0 * a / b + 2.0 * s * (da * b - a * db) / (b * b);
}

double h_inverse(double t) {
  const double t1 = t_profile(1.0);
  if (!(t >= t1) || !std::isfinite(t))
    throw std::domain_error("h_inverse: t below t_profile(1); inverse defined only on s >= 1");

  double lo = 1.0, hi = std::max(1.0, t);  // t(s) > 2s > s, so the root is in [1, t]
  double s = std::min(std::max(1.0, t / 2.0), hi);
  for (int it = 0; it < 60; ++it) {
    const double f = t_profile(s) - t;
    if (std::abs(f) <= 1e-12 * t) return s;
    if (f > 0.0) hi = s; else lo = s;
    const double step = f / t_profile_derivative(s);
    double next = s - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  // Bisection fallback.
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (t_profile(mid) - t > 0.0) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

double unit_ball_volume(int m) {
  if (m < 1) throw std::domain_error("unit_ball_volume: dimension must be >= 1");
  // The gamma-function quotient loses a couple of ulps; the low dimensions
  // used throughout the counting bounds deserve exact values.
  switch (m) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
    default: return std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
  }
}

namespace {

struct ScaledPieces {
  double e2, e4, den;  // den = 4 e^{-2q} (sinh^2 q - q^2)
};

ScaledPieces scaled_pieces(double q) {
  ScaledPieces p;
  p.e2 = std::exp(-2.0 * q);
  p.e4 = p.e2 * p.e2;
  p.den = 1.0 + p.e4 - (4.0 * q * q + 2.0) * p.e2;
  return p;
}

}  // namespace

double boundary_profile_eval(const BoundaryProfile& p, double x_n) {
  const double q = p.eta * p.height;
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::domain_error("boundary_profile_eval: eta*height must be positive");
  if (x_n < 0.0 || x_n > p.height)
    throw std::domain_error("boundary_profile_eval: x_n outside [0, height]");
  if (x_n == 0.0 || x_n == p.height) return 0.0;  // clamped ends

  const double s = p.eta * x_n;  // s <= q
  if (q < detail::kScaledSwitch) {
    const double shq = std::sinh(q);
    const double chq = std::cosh(q);
    const double den = shq * shq - q * q;
    const double c1 = -p.eta * p.height * p.height / den;
    const double c2 = shq * shq / den;
    const double c3 = (q - shq * chq) / den;
    return c1 * std::sinh(s) + c2 * x_n * std::cosh(s) + c3 * x_n * std::sinh(s);
  }
  // Scale numerator and denominator by 4 e^{-2q} and regroup
  // c2 cosh(s) + c3 sinh(s) into e^{s} and e^{-s} parts so that the
  // exponentially growing pieces cancel analytically, not numerically.
  const auto sp = scaled_pieces(q);
  const double ep = std::exp(s - 2.0 * q);        // e^{s-2q}, <= e^{-q}
  const double em = std::exp(-s - 2.0 * q);
  const double e0 = std::exp(-s);
  // 4 e^{-2q} * c1_num * sinh(s), c1_num = -q * height
  const double term1 = -2.0 * q * p.height * (ep - em);
  // e^{s}/2 * 4 e^{-2q} (sinh^2 q + q - sinh q cosh q)  [coefficient of x_n]
  const double term2 = 0.5 * (4.0 * q * ep - 2.0 * ep + 2.0 * std::exp(s - 4.0 * q));
  // e^{-s}/2 * 4 e^{-2q} (sinh^2 q - q + sinh q cosh q)
  const double term3 = 0.5 * (2.0 * e0 - (2.0 + 4.0 * q) * em);
  return (term1 + x_n * (term2 + term3)) / sp.den;
}

double boundary_profile_second_derivative_at_zero(const BoundaryProfile& p) {
  const double q = p.eta * p.height;
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::domain_error("boundary_profile_second_derivative_at_zero: eta*height must be positive");
  if (q < detail::kScaledSwitch) {
    const double shq = std::sinh(q);
    const double chq = std::cosh(q);
    return 2.0 * p.eta * (q - shq * chq) / (shq * shq - q * q);
  }
  const auto sp = scaled_pieces(q);
  return -2.0 * p.eta * (1.0 - sp.e4 - 4.0 * q * sp.e2) / sp.den;
}

}  // namespace steklov
