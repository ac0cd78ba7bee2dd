#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace copclass {

enum class MarginalFamily { kNormal, kStudentT, kGamma, kExponential, kLogNormal, kChiSquare };

const char* family_name(MarginalFamily family);
MarginalFamily family_from_name(const std::string& name);

// Univariate distribution from a named parametric family.
// Parameter layouts:
//   Normal      {mu, sigma}
//   StudentT    {nu}
//   Gamma       {shape, scale}
//   Exponential {rate}
//   LogNormal   {mu, sigma}   (log-space)
//   ChiSquare   {dof}         (delegates to Gamma(dof/2, 2))
struct ParametricMarginal {
  MarginalFamily family = MarginalFamily::kNormal;
  std::vector<double> params;

  void validate() const;  // throws std::invalid_argument on bad parameters
  double cdf(double x) const;
  double logpdf(double x) const;  // -inf outside the support
  double quantile(double p) const;
};

// Distribution-free marginal: rescaled empirical cdf plus a smoothed
// numeric derivative stored as a log-density grid.
struct EmpiricalMarginal {
  std::vector<double> sorted_samples;  // ascending
  double grid_lo = 0.0;
  double grid_dx = 0.0;
  std::vector<double> grid_logpdf;
  double density_floor = 1e-12;

  // count(samples <= x) / (N+1), clamped to [1/(N+1), N/(N+1)].
  double cdf(double x) const;
  // Linear interpolation of the log-density grid; ln(density_floor) outside
  // the grid range.
  double logpdf(double x) const;
  // Inverse of the piecewise-linear cdf through the knots (k/(N+1), x_(k)).
  double quantile(double p) const;
};

using Marginal = std::variant<ParametricMarginal, EmpiricalMarginal>;

double cdf(const Marginal& m, double x);
double logpdf(const Marginal& m, double x);
double quantile(const Marginal& m, double p);

// Plain empirical distribution value: count(samples <= x) / N.
double ecdf_raw(std::span<const double> samples, double x);

// Builds the empirical marginal from at least 8 samples.
EmpiricalMarginal fit_empirical(std::span<const double> samples);

// Maximum-likelihood fit within the given family (1/N variance convention).
ParametricMarginal fit_parametric(MarginalFamily family, std::span<const double> samples);

}  // namespace copclass
