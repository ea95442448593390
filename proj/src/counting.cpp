#include "steklov/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steklov/errors.hpp"
#include "steklov/profile.hpp"

namespace steklov {

namespace {

// Shared inclusion rule: point with squared scaled norm q counts iff
// q <= R^2 (1 + 2 * guard), i.e. sqrt(q) <= R (1 + guard) to first order.
bool lattice_inside(double q, double r2) {
  return q <= r2 * (1.0 + 2.0 * kCountingTieGuard);
}

std::int64_t count_recursive(const std::vector<double>& sides, int i, double used,
                             double r2, SpectralFamily family, bool any_nonzero) {
  const int d = static_cast<int>(sides.size());
  if (i == d) return (family == SpectralFamily::DirichletLateral || any_nonzero) ? 1 : 0;
  const int lo = family == SpectralFamily::DirichletLateral ? 1 : 0;
  std::int64_t total = 0;
  for (int v = lo;; ++v) {
    const double c = used + (v / sides[i]) * (v / sides[i]);
    if (!lattice_inside(c, r2)) break;
    total += count_recursive(sides, i + 1, c, r2, family, any_nonzero || v != 0);
  }
  return total;
}

}  // namespace

std::int64_t count_lattice(const LatticeQuery& q) {
  if (q.sides.empty()) throw std::domain_error("count_lattice: empty sides");
  for (double l : q.sides)
    if (!(l > 0.0)) throw std::domain_error("count_lattice: sides must be positive");
  if (!(q.radius >= 0.0)) throw std::domain_error("count_lattice: radius must be >= 0");

  // Reject radii implying counts beyond exact 64-bit range (2^53 guard).
  double bound = 1.0;
  for (double l : q.sides) bound *= q.radius * l + 1.0;
  if (bound > 9.0e15) throw std::domain_error("count_lattice: radius implies count beyond 2^53");

  return count_recursive(q.sides, 0, 0.0, q.radius * q.radius, q.family, false);
}

std::int64_t counting_function(const BoxCylinder& box, SpectralFamily family,
                               double tau) {
  box.validate();
  if (!(tau > 0.0)) throw std::domain_error("counting_function: tau must be positive");

  const double T = box.rho * box.height * tau;  // threshold in the t-domain
  if (T <= 4.0) return 0;                       // t(s) > 4 for every s > 0

  const double t1 = t_profile(1.0);
  const bool inverse_defined = T >= t1;
  const double h_T = inverse_defined ? h_inverse(T) : 1.0;
  const double R = h_T / (M_PI * box.height);
  const double r2 = R * R;

  // Direct path: enumerate admissible modes out to the lattice radius and
  // test each. Above s = 1 the s-domain rule (shared with count_lattice)
  // decides; the t-domain comparison is kept as a consistency check.
  // Radius is in alpha-space (sqrt(alpha) <= enum_radius), slightly inflated
  // to cover the tie guard band.
  const double enum_radius = inverse_defined ? M_PI * R * (1.0 + 1e-9)
                                             : (1.0 / box.height) * (1.0 + 1e-6);
  auto modes = enumerate_base_modes(box.base_sides, family, enum_radius);

  std::int64_t direct = 0;
  for (const auto& m : modes) {
    double qn = 0.0;
    for (size_t i = 0; i < m.size(); ++i) {
      const double f = m[i] / box.base_sides[i];
      qn += f * f;
    }
    const double s_m = M_PI * box.height * std::sqrt(qn);
    bool in;
    if (inverse_defined && s_m >= 1.0) {
      in = lattice_inside(qn, r2);
      const bool t_in = t_profile(s_m) <= T * (1.0 + kCountingTieGuard);
      if (in != t_in && std::abs(t_profile(s_m) - T) > 1e-9 * T)
        throw internal_error("counting_function: s-domain and t-domain comparisons disagree");
    } else {
      in = t_profile(s_m) <= T * (1.0 + kCountingTieGuard);
    }
    if (in) ++direct;
  }

  if (inverse_defined) {
    const std::int64_t inverse =
        count_lattice({box.base_sides, R, family});
    if (inverse != direct)
      throw internal_error("counting_function: direct and inverse counting paths disagree");
  }
  return direct;
}

EllipsoidBound ellipsoid_volume_bound(const BoxCylinder& box, double R,
                                      bool with_upper) {
  box.validate();
  if (!(R > 0.0)) throw std::domain_error("ellipsoid_volume_bound: R must be positive");
  const int d = box.dimension() - 1;
  const double omega = unit_ball_volume(d);
  double prod = 1.0;
  for (double l : box.base_sides) prod *= l;

  EllipsoidBound b;
  b.volume = omega * std::pow(0.5, d) * prod * std::pow(R, d);
  b.has_upper = false;
  b.upper = 0.0;
  if (with_upper) {
    const double l0 = box.base_sides.front();
    for (double l : box.base_sides)
      if (l != l0)
        throw std::invalid_argument(
            "ellipsoid_volume_bound: area term supported for isotropic bases only");
    // Octant sphere area of radius l0 R in R^d.
    const double T = std::pow(0.5, d) * d * omega * std::pow(l0 * R, d - 1);
    b.upper = b.volume + std::sqrt(static_cast<double>(d)) * T;
    b.has_upper = true;
  }
  return b;
}

double mu_from_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("mu_from_lambda: lambda must be >= 0");
  return 1.0 / (1.0 + lambda);
}

double mu_from_mu_star(double mu_star) {
  if (!(mu_star > 0.0)) throw std::domain_error("mu_from_mu_star: mu_star must be positive");
  return mu_star / (1.0 + mu_star);
}

CountingCurve counting_curve(const BoxCylinder& box, const std::vector<double>& taus) {
  box.validate();
  CountingCurve c;
  c.taus = taus;
  const int d = box.dimension() - 1;
  const double omega = unit_ball_volume(d);
  double face_area = 1.0;
  for (double l : box.base_sides) face_area *= l;
  const double weyl_const =
      omega * std::pow(box.rho, d) * face_area / std::pow(4.0 * M_PI, d);

  double prev_tau = 0.0;
  for (double tau : taus) {
    if (!(tau > prev_tau))
      throw std::domain_error("counting_curve: taus must be ascending and positive");
    prev_tau = tau;
    const std::int64_t a0 = counting_function(box, SpectralFamily::DirichletLateral, tau);
    const std::int64_t af = counting_function(box, SpectralFamily::NeumannLateral, tau);
    const double pred = weyl_const * std::pow(tau, d);
    c.counts0.push_back(a0);
    c.countsF.push_back(af);
    c.weyl.push_back(pred);
    c.ratios0.push_back(a0 / pred);
    c.ratiosF.push_back(af / pred);
  }
  return c;
}

}  // namespace steklov
