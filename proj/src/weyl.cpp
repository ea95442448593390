#include "steklov/weyl.hpp"

#include <cmath>
#include <stdexcept>

#include "steklov/counting.hpp"
#include "steklov/profile.hpp"

namespace steklov {

std::string to_string(Trend t) {
  return t == Trend::ApproachingOne ? "approaching_one" : "inconclusive";
}

namespace {

void validate(const BoundaryData& b) {
  if (b.n < 2) throw std::domain_error("BoundaryData: n must be >= 2");
  if (!(b.rho_integral > 0.0) || !(b.boundary_volume > 0.0))
    throw std::domain_error("BoundaryData: scalars must be positive and finite");
}

}  // namespace

double predict_count(const BoundaryData& b, double tau) {
  validate(b);
  if (!(tau > 0.0)) throw std::domain_error("predict_count: tau must be positive");
  const int d = b.n - 1;
  return unit_ball_volume(d) * std::pow(tau, d) * b.rho_integral /
         std::pow(4.0 * M_PI, d);
}

double predict_eigenvalue(const BoundaryData& b, int k) {
  validate(b);
  if (k < 1) throw std::domain_error("predict_eigenvalue: k must be >= 1");
  const int d = b.n - 1;
  return 4.0 * M_PI *
         std::pow(k / (unit_ball_volume(d) * b.boundary_volume), 1.0 / d);
}

Trend detect_trend(const std::vector<double>& ratio) {
  if (ratio.size() < 2) return Trend::Inconclusive;
  const size_t q = std::max<size_t>(1, ratio.size() / 4);
  double first = 0.0, last = 0.0;
  for (size_t i = 0; i < q; ++i) {
    first += std::abs(ratio[i] - 1.0);
    last += std::abs(ratio[ratio.size() - 1 - i] - 1.0);
  }
  return last < first ? Trend::ApproachingOne : Trend::Inconclusive;
}

ConvergenceReport convergence_report_counts(const BoxCylinder& box,
                                            SpectralFamily family,
                                            const std::vector<double>& taus) {
  box.validate();
  const int d = box.dimension() - 1;
  double face_area = 1.0;
  for (double l : box.base_sides) face_area *= l;
  BoundaryData b{box.dimension(), std::pow(box.rho, d) * face_area, face_area};

  ConvergenceReport r;
  double prev = 0.0;
  for (double tau : taus) {
    if (!(tau > prev))
      throw std::domain_error("convergence_report_counts: taus must be ascending and positive");
    prev = tau;
    const double exact = static_cast<double>(counting_function(box, family, tau));
    const double pred = predict_count(b, tau);
    r.abscissae.push_back(tau);
    r.exact.push_back(exact);
    r.predicted.push_back(pred);
    r.ratio.push_back(exact / pred);
  }
  r.trend = detect_trend(r.ratio);
  return r;
}

ConvergenceReport convergence_report_eigenvalues(
    const std::vector<double>& spectrum_sorted, const BoundaryData& b,
    const std::vector<int>& k_range) {
  validate(b);
  if (k_range.empty())
    throw std::domain_error("convergence_report_eigenvalues: empty k range");
  ConvergenceReport r;
  for (int k : k_range) {
    if (k < 1 || static_cast<size_t>(k) > spectrum_sorted.size())
      throw std::domain_error("convergence_report_eigenvalues: k out of range");
    const double exact = spectrum_sorted[k - 1];
    const double pred = predict_eigenvalue(b, k);
    r.abscissae.push_back(static_cast<double>(k));
    r.exact.push_back(exact);
    r.predicted.push_back(pred);
    r.ratio.push_back(exact / pred);
  }
  r.trend = detect_trend(r.ratio);
  return r;
}

}  // namespace steklov
