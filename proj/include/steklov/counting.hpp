#pragma once

#include <cstdint>
#include <vector>

#include "steklov/boxspec.hpp"

namespace steklov {

// Relative guard band for inclusive comparisons at the counting threshold.
// Both counting paths (direct and via h) resolve floating-point ties with
// the same rule so their results agree exactly.
inline constexpr double kCountingTieGuard = 1e-12;

struct LatticeQuery {
  std::vector<double> sides;  // l_1 .. l_{n-1}
  double radius;              // R >= 0
  SpectralFamily family;
};

// Exact number of admissible multi-indices with sum (m_i / l_i)^2 <= R^2
// (inclusive, with the tie guard above). Admissibility: all m_i >= 1
// (DirichletLateral) or all m_i >= 0 with sum != 0 (NeumannLateral).
std::int64_t count_lattice(const LatticeQuery& q);

// #{modes with lambda <= tau} for the box spectrum. Computed by the direct
// t-domain test; cross-checked against count_lattice at R = h(rho l_n tau)
// / (pi l_n) whenever the inverse path is defined. Throws internal_error if
// the two paths disagree.
std::int64_t counting_function(const BoxCylinder& box, SpectralFamily family,
                               double tau);

struct EllipsoidBound {
  double volume;  // V: positive-octant ellipsoid volume
  double upper;   // V + sqrt(n-1) T, isotropic bases only
  bool has_upper;
};

// Octant volume V = omega_{n-1} 2^{-(n-1)} (prod l_i) R^{n-1}; for
// isotropic bases also the area term T = 2^{-(n-1)} (n-1) omega_{n-1}
// (l R)^{n-2} entering the sandwich V <= A^f + 1 <= V + sqrt(n-1) T.
// with_upper on an anisotropic base throws std::invalid_argument.
EllipsoidBound ellipsoid_volume_bound(const BoxCylinder& box, double R,
                                      bool with_upper);

// mu = 1 / (1 + lambda).
double mu_from_lambda(double lambda);

// mu = mu_star / (1 + mu_star); with mu_star = 1/lambda this coincides
// with mu_from_lambda(lambda).
double mu_from_mu_star(double mu_star);

struct CountingCurve {
  std::vector<double> taus;
  std::vector<std::int64_t> counts0;  // A^0 (Dirichlet family)
  std::vector<std::int64_t> countsF;  // A^f (Neumann family)
  std::vector<double> weyl;           // leading-term prediction
  std::vector<double> ratios0;
  std::vector<double> ratiosF;
};

// Builds the exact counts, the Weyl prediction
// omega_{n-1} tau^{n-1} rho^{n-1} (prod l_i) / (4 pi)^{n-1}, and the ratios
// over an ascending tau grid.
CountingCurve counting_curve(const BoxCylinder& box, const std::vector<double>& taus);

}  // namespace steklov
