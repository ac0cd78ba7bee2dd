#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

#include "copclass/copula.hpp"

namespace copclass {

// Column-wise rank transform to pseudo-samples: rank / (N+1), average ranks
// for ties. Requires N >= 8 rows.
Eigen::MatrixXd empirical_transform(const Eigen::MatrixXd& samples);

// Pairwise concordance statistic (concordant - discordant) / (n(n-1)/2);
// tied pairs contribute zero. O(n^2).
double kendall_tau(std::span<const double> x, std::span<const double> y);

// Matrix of pairwise kendall_tau values over columns, unit diagonal.
Eigen::MatrixXd kendall_tau_matrix(const Eigen::MatrixXd& samples);

struct FitReport {
  CopulaModel model;
  double loglik = 0.0;   // sum of per-sample copula log-densities under model
  int iterations = 0;
  bool repaired = false;  // correlation required positive-definite repair
  std::string note;       // diagnostics (non-convergence, N <= d, ...)
};

// Gaussian copula fit from pseudo-samples: moment matrix of the normal scores
// rescaled to unit diagonal.
FitReport eml_fit_gaussian(const Eigen::MatrixXd& pseudo);

// Student's t copula log-likelihood: sum of per-sample log-densities.
double t_loglik(const Eigen::MatrixXd& pseudo, const CorrelationMatrix& rho, double nu);

// Canonical maximum likelihood for the t copula: empirical transform,
// Kendall's-tau correlation mapped through sin(pi tau / 2), then a
// golden-section search for nu on (2, 1000] to 1e-3.
FitReport cml_fit_t(const Eigen::MatrixXd& samples);

// Rank-based calibration of the Gaussian copula (same correlation step as
// cml_fit_t, no degrees-of-freedom search).
FitReport cml_fit_gaussian(const Eigen::MatrixXd& samples);

}  // namespace copclass
