#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "copclass/correlation.hpp"

namespace copclass {

enum class CopulaKind { kGaussian, kStudentT };

// Degrees of freedom at and beyond which the t copula is numerically the
// Gaussian copula; likelihood searches stop here.
constexpr double kMaxCopulaNu = 1000.0;

// ln c(u; rho) for the Gaussian copula. Every u_j must lie strictly in (0, 1).
double gaussian_copula_logdensity(const Eigen::VectorXd& u, const CorrelationMatrix& rho);

// ln c(u; rho, nu) for the Student's t copula, nu > 2.
double student_t_copula_logdensity(const Eigen::VectorXd& u, const CorrelationMatrix& rho, double nu);

// n x d matrices of copula samples in (0, 1); deterministic in the seed.
Eigen::MatrixXd sample_gaussian_copula(const CorrelationMatrix& rho, int n, std::uint64_t seed);
Eigen::MatrixXd sample_t_copula(const CorrelationMatrix& rho, double nu, int n, std::uint64_t seed);

// Correlation matrix plus family tag (nu present only for the t copula).
struct CopulaModel {
  CopulaKind kind = CopulaKind::kGaussian;
  CorrelationMatrix rho = CorrelationMatrix::identity(1);
  double nu = 0.0;

  static CopulaModel gaussian(CorrelationMatrix rho);
  static CopulaModel student_t(CorrelationMatrix rho, double nu);  // nu > 2

  int dim() const { return rho.dim(); }
  double log_density(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd sample(int n, std::uint64_t seed) const;
};

}  // namespace copclass
