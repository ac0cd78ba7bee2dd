#include "copclass/copula.hpp"

#include <cmath>
#include <stdexcept>

#include "copclass/rng.hpp"
#include "copclass/special_functions.hpp"

namespace copclass {

namespace {

constexpr double kUnitClamp = 1e-15;  // keeps sampled probabilities strictly interior

void require_interior(const Eigen::VectorXd& u, const CorrelationMatrix& rho, const char* fn) {
  if (u.size() != rho.dim()) throw std::invalid_argument(std::string(fn) + ": dimension mismatch");
  for (int j = 0; j < u.size(); ++j) {
    if (!(u[j] > 0.0 && u[j] < 1.0))
      throw std::domain_error(std::string(fn) + ": u components must lie strictly in (0, 1)");
  }
}

}  // namespace

double gaussian_copula_logdensity(const Eigen::VectorXd& u, const CorrelationMatrix& rho) {
  require_interior(u, rho, "gaussian_copula_logdensity");
  Eigen::VectorXd zeta(u.size());
  for (int j = 0; j < u.size(); ++j) zeta[j] = normal_quantile(u[j]);
  // -1/2 ln|rho| - 1/2 zeta' (rho^{-1} - I) zeta, quadratic form through the
  // Cholesky factor.
  return -0.5 * rho.log_det() - 0.5 * (rho.mahalanobis(zeta) - zeta.squaredNorm());
}

double student_t_copula_logdensity(const Eigen::VectorXd& u, const CorrelationMatrix& rho, double nu) {
  if (!(nu > 2.0)) throw std::domain_error("student_t_copula_logdensity: nu must exceed 2");
  require_interior(u, rho, "student_t_copula_logdensity");
  const double d = static_cast<double>(u.size());
  Eigen::VectorXd zeta(u.size());
  double tail_sum = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    zeta[j] = student_t_quantile(u[j], nu);
    tail_sum += std::log1p(zeta[j] * zeta[j] / nu);
  }
  const double quad = rho.mahalanobis(zeta);
  return -0.5 * rho.log_det() + ln_gamma(0.5 * (nu + d)) - ln_gamma(0.5 * nu) +
         d * (ln_gamma(0.5 * nu) - ln_gamma(0.5 * (nu + 1.0))) -
         0.5 * (nu + d) * std::log1p(quad / nu) + 0.5 * (nu + 1.0) * tail_sum;
}

Eigen::MatrixXd sample_gaussian_copula(const CorrelationMatrix& rho, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_gaussian_copula: n must be positive");
  const int d = rho.dim();
  Rng rng(seed);
  Eigen::MatrixXd out(n, d);
  Eigen::VectorXd g(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) g[j] = rng.normal();
    Eigen::VectorXd z = rho.cholesky().triangularView<Eigen::Lower>() * g;
    for (int j = 0; j < d; ++j)
      out(i, j) = std::clamp(normal_cdf(z[j]), kUnitClamp, 1.0 - kUnitClamp);
  }
  return out;
}

Eigen::MatrixXd sample_t_copula(const CorrelationMatrix& rho, double nu, int n, std::uint64_t seed) {
  if (!(nu > 2.0)) throw std::domain_error("sample_t_copula: nu must exceed 2");
  if (n < 1) throw std::invalid_argument("sample_t_copula: n must be positive");
  const int d = rho.dim();
  Rng rng(seed);
  Eigen::MatrixXd out(n, d);
  Eigen::VectorXd g(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) g[j] = rng.normal();
    Eigen::VectorXd z = rho.cholesky().triangularView<Eigen::Lower>() * g;
    const double s = rng.chi_square(nu);
    const double scale = std::sqrt(nu / s);
    for (int j = 0; j < d; ++j)
      out(i, j) = std::clamp(student_t_cdf(z[j] * scale, nu), kUnitClamp, 1.0 - kUnitClamp);
  }
  return out;
}

CopulaModel CopulaModel::gaussian(CorrelationMatrix rho) {
  CopulaModel m;
  m.kind = CopulaKind::kGaussian;
  m.rho = std::move(rho);
  m.nu = 0.0;
  return m;
}

CopulaModel CopulaModel::student_t(CorrelationMatrix rho, double nu) {
  if (!(nu > 2.0)) throw std::invalid_argument("CopulaModel::student_t: nu must exceed 2");
  CopulaModel m;
  m.kind = CopulaKind::kStudentT;
  m.rho = std::move(rho);
  m.nu = nu;
  return m;
}

double CopulaModel::log_density(const Eigen::VectorXd& u) const {
  return kind == CopulaKind::kGaussian ? gaussian_copula_logdensity(u, rho)
                                       : student_t_copula_logdensity(u, rho, nu);
}

Eigen::MatrixXd CopulaModel::sample(int n, std::uint64_t seed) const {
  return kind == CopulaKind::kGaussian ? sample_gaussian_copula(rho, n, seed)
                                       : sample_t_copula(rho, nu, n, seed);
}

}  // namespace copclass
