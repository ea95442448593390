#pragma once

#include <string>
#include <vector>

namespace steklov {

enum class SpectralFamily {
  DirichletLateral,  // sine base modes, every m_i >= 1
  NeumannLateral,    // cosine base modes, every m_i >= 0, sum m_i != 0
};

std::string to_string(SpectralFamily f);
SpectralFamily family_from_string(const std::string& s);

// n-dimensional rectangular cylinder: base [0,l_1]x...x[0,l_{n-1}],
// height l_n, constant density rho on the Steklov face x_n = 0.
struct BoxCylinder {
  std::vector<double> base_sides;  // l_1 .. l_{n-1}, all positive
  double height;                   // l_n
  double rho;                      // density on the Steklov face

  int dimension() const { return static_cast<int>(base_sides.size()) + 1; }
  // Hypothesis of the cube-comparison lemma: max base side < height.
  // Violation is legal input; callers may warn.
  bool base_shorter_than_height() const;

  void validate() const;  // throws std::domain_error on bad sides/height/rho
};

struct BoxMode {
  std::vector<int> m;     // multi-index, n-1 entries
  double alpha;           // base eigenvalue, sum (m_i pi / l_i)^2
  double lambda;          // Steklov eigenvalue t(sqrt(alpha) l_n) / (rho l_n)
  SpectralFamily family;
};

// The K smallest base Laplace eigenvalues of the cross-section with
// multiplicity, sorted ascending (ties broken by lexicographic multi-index).
std::vector<std::pair<std::vector<int>, double>> base_spectrum(
    const BoxCylinder& box, SpectralFamily family, int K);

// lambda = t(sqrt(alpha) * height) / (rho * height).
double steklov_from_base(double alpha, double height, double rho);

// The K smallest Steklov eigenvalues with multiplicity, sorted ascending.
std::vector<BoxMode> spectrum(const BoxCylinder& box, SpectralFamily family, int K);

// u(x) = X(x_1..x_{n-1}) Y(x_n) with c = 1 normalization.
double eigenfunction_eval(const BoxCylinder& box, const BoxMode& mode,
                          const std::vector<double>& x);

// |Delta u + lambda rho u_nu| at a point on the Steklov face x_n = 0,
// evaluated analytically: |X| * |Y''(0) + lambda rho|.
double steklov_residual(const BoxCylinder& box, const BoxMode& mode,
                        const std::vector<double>& sample);

// Lattice enumeration helper shared with the counting module: all
// admissible multi-indices with sum (m_i pi / l_i)^2 <= radius^2.
std::vector<std::vector<int>> enumerate_base_modes(
    const std::vector<double>& sides, SpectralFamily family, double radius);

}  // namespace steklov
