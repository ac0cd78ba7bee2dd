#include "copclass/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "copclass/special_functions.hpp"
#include "golden.hpp"

namespace copclass {

namespace {

constexpr std::size_t kMinSamples = 8;
constexpr double kNuTolerance = 1e-3;
constexpr int kMaxNuIterations = 200;

void require_rows(const Eigen::MatrixXd& m, const char* fn) {
  if (static_cast<std::size_t>(m.rows()) < kMinSamples)
    throw std::invalid_argument(std::string(fn) + ": need at least " +
                                std::to_string(kMinSamples) + " samples");
}

// Average ranks (ties share the mean of their positions), mapped to (0, 1)
// through rank / (N+1).
void rank_column(const Eigen::MatrixXd& samples, int col, Eigen::MatrixXd& out) {
  const auto n = static_cast<std::size_t>(samples.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return samples(a, col) < samples(b, col); });
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && samples(order[j + 1], col) == samples(order[i], col)) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      out(order[k], col) = avg_rank / static_cast<double>(n + 1);
    i = j + 1;
  }
}

CorrelationMatrix rank_correlation(const Eigen::MatrixXd& samples) {
  Eigen::MatrixXd tau = kendall_tau_matrix(samples);
  Eigen::MatrixXd rho = (tau.array() * (0.5 * M_PI)).sin().matrix();
  rho.diagonal().setOnes();
  return CorrelationMatrix::from_entries(rho);
}

double sum_logdensity(const Eigen::MatrixXd& pseudo, const CopulaModel& model) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < pseudo.rows(); ++i)
    acc += model.log_density(pseudo.row(i).transpose());
  return acc;
}

}  // namespace

Eigen::MatrixXd empirical_transform(const Eigen::MatrixXd& samples) {
  require_rows(samples, "empirical_transform");
  Eigen::MatrixXd out(samples.rows(), samples.cols());
  for (int j = 0; j < samples.cols(); ++j) rank_column(samples, j, out);
  return out;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("kendall_tau: need at least 2 observations");
  const std::size_t n = x.size();
  long long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double prod = dx * dy;
      if (prod > 0.0)
        ++concordant;
      else if (prod < 0.0)
        ++discordant;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(concordant - discordant) / pairs;
}

Eigen::MatrixXd kendall_tau_matrix(const Eigen::MatrixXd& samples) {
  const int d = static_cast<int>(samples.cols());
  Eigen::MatrixXd tau = Eigen::MatrixXd::Identity(d, d);
  std::vector<double> xi(samples.rows()), xj(samples.rows());
  for (int i = 0; i < d; ++i) {
    for (Eigen::Index r = 0; r < samples.rows(); ++r) xi[r] = samples(r, i);
    for (int j = i + 1; j < d; ++j) {
      for (Eigen::Index r = 0; r < samples.rows(); ++r) xj[r] = samples(r, j);
      tau(i, j) = tau(j, i) = kendall_tau(xi, xj);
    }
  }
  return tau;
}

FitReport eml_fit_gaussian(const Eigen::MatrixXd& pseudo) {
  if (pseudo.rows() < 1) throw std::invalid_argument("eml_fit_gaussian: empty pseudo-sample set");
  const auto n = pseudo.rows();
  const auto d = pseudo.cols();

  Eigen::MatrixXd zeta(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double u = pseudo(i, j);
      if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("eml_fit_gaussian: pseudo-samples must lie strictly in (0, 1)");
      zeta(i, j) = normal_quantile(u);
    }
  }

  // Moment matrix of the normal scores (zero-mean convention); rescaled to
  // unit diagonal so the correlation-matrix invariant holds at finite N.
  Eigen::MatrixXd moment = (zeta.transpose() * zeta) / static_cast<double>(n);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (moment(j, j) < 1e-12)
      throw std::runtime_error("eml_fit_gaussian: degenerate column " + std::to_string(j) +
                               " (zero variance of normal scores)");
  }
  Eigen::VectorXd scale = moment.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = scale.asDiagonal() * moment * scale.asDiagonal();
  corr = 0.5 * (corr + corr.transpose());
  corr.diagonal().setOnes();

  FitReport report;
  report.model = CopulaModel::gaussian(CorrelationMatrix::from_entries(corr));
  report.repaired = report.model.rho.repaired();
  report.iterations = 0;  // closed form
  report.loglik = sum_logdensity(pseudo, report.model);
  if (n <= d) report.note = "sample count <= dimension; correlation estimate may be unstable";
  return report;
}

double t_loglik(const Eigen::MatrixXd& pseudo, const CorrelationMatrix& rho, double nu) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < pseudo.rows(); ++i)
    acc += student_t_copula_logdensity(pseudo.row(i).transpose(), rho, nu);
  return acc;
}

FitReport cml_fit_t(const Eigen::MatrixXd& samples) {
  require_rows(samples, "cml_fit_t");
  Eigen::MatrixXd pseudo = empirical_transform(samples);
  CorrelationMatrix rho = rank_correlation(samples);

  // Maximize over ln(nu - 2); the log reparameterization keeps the open
  // boundary at 2 out of the search interval.
  auto objective = [&](double t) { return t_loglik(pseudo, rho, 2.0 + std::exp(t)); };
  auto width_ok = [](double lo, double hi) { return std::exp(hi) - std::exp(lo) < kNuTolerance; };
  auto res = detail::golden_section_max(objective, std::log(1e-3), std::log(kMaxCopulaNu - 2.0),
                                        width_ok, kMaxNuIterations);

  FitReport report;
  report.model = CopulaModel::student_t(rho, 2.0 + std::exp(res.x));
  report.repaired = rho.repaired();
  report.iterations = res.iterations;
  report.loglik = res.fx;
  if (!res.converged)
    report.note = "nu search hit the iteration cap (" + std::to_string(kMaxNuIterations) +
                  "); best value reported";
  return report;
}

FitReport cml_fit_gaussian(const Eigen::MatrixXd& samples) {
  require_rows(samples, "cml_fit_gaussian");
  Eigen::MatrixXd pseudo = empirical_transform(samples);
  CorrelationMatrix rho = rank_correlation(samples);

  FitReport report;
  report.model = CopulaModel::gaussian(rho);
  report.repaired = rho.repaired();
  report.iterations = 0;
  report.loglik = sum_logdensity(pseudo, report.model);
  return report;
}

}  // namespace copclass
