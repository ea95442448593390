#pragma once

#include <string>
#include <vector>

#include "steklov/boxspec.hpp"

namespace steklov {

struct BoundaryData {
  int n;                  // ambient dimension, >= 2
  double rho_integral;    // int_{boundary} rho^{n-1} ds
  double boundary_volume; // vol(boundary), used with rho == 1
};

enum class Trend { ApproachingOne, Inconclusive };

std::string to_string(Trend t);

struct ConvergenceReport {
  std::vector<double> abscissae;  // taus or ks
  std::vector<double> exact;
  std::vector<double> predicted;
  std::vector<double> ratio;
  Trend trend;
};

// Leading Weyl term: omega_{n-1} tau^{n-1} rho_integral / (4 pi)^{n-1}.
double predict_count(const BoundaryData& b, double tau);

// Inverse form: lambda_k ~ 4 pi (k / (omega_{n-1} vol(boundary)))^{1/(n-1)}.
double predict_eigenvalue(const BoundaryData& b, int k);

// Exact box counts vs the prediction with rho_integral = rho^{n-1} * face
// area (the density vanishes off the Steklov face).
ConvergenceReport convergence_report_counts(const BoxCylinder& box,
                                            SpectralFamily family,
                                            const std::vector<double>& taus);

// ratio_k = lambda_k / predict_eigenvalue(k) over the given k range
// (1-based indices into the sorted spectrum).
ConvergenceReport convergence_report_eigenvalues(
    const std::vector<double>& spectrum_sorted, const BoundaryData& b,
    const std::vector<int>& k_range);

// Trend detection: quartile comparison of |ratio - 1|; diagnostic only.
Trend detect_trend(const std::vector<double>& ratio);

}  // namespace steklov
