#include "copclass/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "copclass/special_functions.hpp"
#include "golden.hpp"

namespace copclass {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kGridPoints = 512;
constexpr double kDensityFloor = 1e-12;
constexpr std::size_t kMinFitSamples = 8;

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Population (1/N) variance.
double variance_of(std::span<const double> xs, double mean) {
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size());
}

void require_samples(std::span<const double> xs, std::size_t min_n, const char* fn) {
  if (xs.size() < min_n)
    throw std::invalid_argument(std::string(fn) + ": need at least " + std::to_string(min_n) +
                                " samples, got " + std::to_string(xs.size()));
}

double fit_gamma_shape(double log_mean_minus_mean_log) {
  const double s = log_mean_minus_mean_log;
  if (!(s > 0.0))
    throw std::runtime_error("fit_parametric(gamma): degenerate sample (ln(mean) <= mean(ln))");
  double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  for (int it = 0; it < 100; ++it) {
    double g = std::log(k) - digamma(k) - s;
    double dg = 1.0 / k - trigamma(k);
    double step = g / dg;
    double next = k - step;
    if (next <= 0.0) next = 0.5 * k;
    if (std::fabs(next - k) <= 1e-12 * k) return next;
    k = next;
  }
  throw std::runtime_error("fit_parametric(gamma): shape solve did not converge in 100 iterations");
}

// MLE of dof for chi-square (scale pinned at 2): psi(k/2) = mean(ln x) - ln 2.
double fit_chi_square_dof(double mean_log) {
  const double target = mean_log - std::log(2.0);
  double k = std::max(0.2, 2.0 * std::exp(target));  // psi(x) ~ ln x
  for (int it = 0; it < 200; ++it) {
    double g = digamma(0.5 * k) - target;
    double dg = 0.5 * trigamma(0.5 * k);
    double next = k - g / dg;
    if (next <= 0.0) next = 0.5 * k;
    if (std::fabs(next - k) <= 1e-12 * k) return next;
    k = next;
  }
  throw std::runtime_error("fit_parametric(chi_square): dof solve did not converge in 200 iterations");
}

}  // namespace

const char* family_name(MarginalFamily family) {
  switch (family) {
    case MarginalFamily::kNormal: return "normal";
    case MarginalFamily::kStudentT: return "t";
    case MarginalFamily::kGamma: return "gamma";
    case MarginalFamily::kExponential: return "exponential";
    case MarginalFamily::kLogNormal: return "lognormal";
    case MarginalFamily::kChiSquare: return "chi_square";
  }
  throw std::logic_error("family_name: unknown family");
}

MarginalFamily family_from_name(const std::string& name) {
  if (name == "normal") return MarginalFamily::kNormal;
  if (name == "t" || name == "student_t") return MarginalFamily::kStudentT;
  if (name == "gamma") return MarginalFamily::kGamma;
  if (name == "exponential" || name == "exp") return MarginalFamily::kExponential;
  if (name == "lognormal" || name == "log_normal") return MarginalFamily::kLogNormal;
  if (name == "chi_square" || name == "chisq") return MarginalFamily::kChiSquare;
  throw std::invalid_argument("unknown marginal family: " + name);
}

void ParametricMarginal::validate() const {
  auto need = [this](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument(std::string(family_name(family)) + " marginal expects " +
                                  std::to_string(n) + " parameter(s)");
  };
  auto positive = [this](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(family_name(family)) + " marginal: " + what +
                                  " must be positive");
  };
  switch (family) {
    case MarginalFamily::kNormal:
      need(2);
      positive(params[1], "sigma");
      break;
    case MarginalFamily::kStudentT:
      need(1);
      positive(params[0], "nu");
      break;
    case MarginalFamily::kGamma:
      need(2);
      positive(params[0], "shape");
      positive(params[1], "scale");
      break;
    case MarginalFamily::kExponential:
      need(1);
      positive(params[0], "rate");
      break;
    case MarginalFamily::kLogNormal:
      need(2);
      positive(params[1], "sigma");
      break;
    case MarginalFamily::kChiSquare:
      need(1);
      positive(params[0], "dof");
      break;
  }
}

double ParametricMarginal::cdf(double x) const {
  switch (family) {
    case MarginalFamily::kNormal: return normal_cdf((x - params[0]) / params[1]);
    case MarginalFamily::kStudentT: return student_t_cdf(x, params[0]);
    case MarginalFamily::kGamma: return gamma_cdf(x, params[0], params[1]);
    case MarginalFamily::kExponential: return exponential_cdf(x, params[0]);
    case MarginalFamily::kLogNormal: return lognormal_cdf(x, params[0], params[1]);
    case MarginalFamily::kChiSquare: return chi_square_cdf(x, params[0]);
  }
  throw std::logic_error("ParametricMarginal::cdf: unknown family");
}

double ParametricMarginal::logpdf(double x) const {
  switch (family) {
    case MarginalFamily::kNormal:
      return normal_logpdf((x - params[0]) / params[1]) - std::log(params[1]);
    case MarginalFamily::kStudentT: return student_t_logpdf(x, params[0]);
    case MarginalFamily::kGamma:
      return x < 0.0 ? kNegInf : gamma_logpdf(x, params[0], params[1]);
    case MarginalFamily::kExponential:
      return x < 0.0 ? kNegInf : exponential_logpdf(x, params[0]);
    case MarginalFamily::kLogNormal:
      return x <= 0.0 ? kNegInf : lognormal_logpdf(x, params[0], params[1]);
    case MarginalFamily::kChiSquare:
      return x < 0.0 ? kNegInf : chi_square_logpdf(x, params[0]);
  }
  throw std::logic_error("ParametricMarginal::logpdf: unknown family");
}

double ParametricMarginal::quantile(double p) const {
  switch (family) {
    case MarginalFamily::kNormal: return params[0] + params[1] * normal_quantile(p);
    case MarginalFamily::kStudentT: return student_t_quantile(p, params[0]);
    case MarginalFamily::kGamma: return gamma_quantile(p, params[0], params[1]);
    case MarginalFamily::kExponential: return exponential_quantile(p, params[0]);
    case MarginalFamily::kLogNormal: return lognormal_quantile(p, params[0], params[1]);
    case MarginalFamily::kChiSquare: return chi_square_quantile(p, params[0]);
  }
  throw std::logic_error("ParametricMarginal::quantile: unknown family");
}

double EmpiricalMarginal::cdf(double x) const {
  const double n = static_cast<double>(sorted_samples.size());
  const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  const double count = static_cast<double>(it - sorted_samples.begin());
  const double value = count / (n + 1.0);
  return std::clamp(value, 1.0 / (n + 1.0), n / (n + 1.0));
}

double EmpiricalMarginal::logpdf(double x) const {
  const double lo = grid_lo;
  const double hi = grid_lo + grid_dx * static_cast<double>(grid_logpdf.size() - 1);
  if (!(x >= lo && x <= hi)) return std::log(density_floor);
  const double t = (x - lo) / grid_dx;
  const auto i = std::min(static_cast<std::size_t>(t), grid_logpdf.size() - 2);
  const double frac = t - static_cast<double>(i);
  return grid_logpdf[i] + frac * (grid_logpdf[i + 1] - grid_logpdf[i]);
}

double EmpiricalMarginal::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("EmpiricalMarginal::quantile: p must lie strictly in (0, 1)");
  const std::size_t n = sorted_samples.size();
  const double t = p * static_cast<double>(n + 1);  // rank coordinate
  if (t <= 1.0) return sorted_samples.front();
  if (t >= static_cast<double>(n)) return sorted_samples.back();
  const auto k = static_cast<std::size_t>(t);  // lies in [1, n-1]
  const double frac = t - static_cast<double>(k);
  return sorted_samples[k - 1] + frac * (sorted_samples[k] - sorted_samples[k - 1]);
}

double cdf(const Marginal& m, double x) {
  return std::visit([x](const auto& impl) { return impl.cdf(x); }, m);
}

double logpdf(const Marginal& m, double x) {
  return std::visit([x](const auto& impl) { return impl.logpdf(x); }, m);
}

double quantile(const Marginal& m, double p) {
  return std::visit([p](const auto& impl) { return impl.quantile(p); }, m);
}

double ecdf_raw(std::span<const double> samples, double x) {
  require_samples(samples, 1, "ecdf_raw");
  std::size_t count = 0;
  for (double s : samples)
    if (s <= x) ++count;
  return static_cast<double>(count) / static_cast<double>(samples.size());
}

EmpiricalMarginal fit_empirical(std::span<const double> samples) {
  require_samples(samples, kMinFitSamples, "fit_empirical");
  EmpiricalMarginal m;
  m.sorted_samples.assign(samples.begin(), samples.end());
  std::sort(m.sorted_samples.begin(), m.sorted_samples.end());
  const std::size_t n = m.sorted_samples.size();
  const double dn = static_cast<double>(n);

  const double mean = mean_of(m.sorted_samples);
  const double sd = std::sqrt(variance_of(m.sorted_samples, mean));
  if (!(sd > 0.0)) throw std::runtime_error("fit_empirical: sample has zero variance");
  const double h = 1.06 * sd * std::pow(dn, -0.2);  // Silverman-style bandwidth

  const double lo = m.sorted_samples.front() - h;
  const double hi = m.sorted_samples.back() + h;
  m.grid_lo = lo;
  m.grid_dx = (hi - lo) / static_cast<double>(kGridPoints - 1);
  m.density_floor = kDensityFloor;

  // Rescaled ecdf on the grid.
  std::vector<double> steps(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = lo + m.grid_dx * i;
    const auto it = std::upper_bound(m.sorted_samples.begin(), m.sorted_samples.end(), x);
    steps[i] = static_cast<double>(it - m.sorted_samples.begin()) / (dn + 1.0);
  }

  // Gaussian smoothing (kernel width h, truncated at 6h, renormalized), then
  // central differences.
  const int reach = std::min<int>(kGridPoints - 1, static_cast<int>(std::ceil(6.0 * h / m.grid_dx)) + 1);
  std::vector<double> kernel(reach + 1);
  for (int k = 0; k <= reach; ++k) {
    const double z = static_cast<double>(k) * m.grid_dx / h;
    kernel[k] = std::exp(-0.5 * z * z);
  }
  std::vector<double> smooth(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    double acc = 0.0, wsum = 0.0;
    const int jlo = std::max(0, i - reach);
    const int jhi = std::min(kGridPoints - 1, i + reach);
    for (int j = jlo; j <= jhi; ++j) {
      const double w = kernel[std::abs(j - i)];
      acc += w * steps[j];
      wsum += w;
    }
    smooth[i] = acc / wsum;
  }

  m.grid_logpdf.resize(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    double deriv;
    if (i == 0)
      deriv = (smooth[1] - smooth[0]) / m.grid_dx;
    else if (i == kGridPoints - 1)
      deriv = (smooth[i] - smooth[i - 1]) / m.grid_dx;
    else
      deriv = (smooth[i + 1] - smooth[i - 1]) / (2.0 * m.grid_dx);
    m.grid_logpdf[i] = std::log(std::max(deriv, kDensityFloor));
  }
  return m;
}

ParametricMarginal fit_parametric(MarginalFamily family, std::span<const double> samples) {
  require_samples(samples, kMinFitSamples, "fit_parametric");
  const double mean = mean_of(samples);
  ParametricMarginal m;
  m.family = family;

  auto require_support = [&](bool strictly_positive) {
    for (double x : samples) {
      if (strictly_positive ? !(x > 0.0) : !(x >= 0.0))
        throw std::invalid_argument(std::string("fit_parametric(") + family_name(family) +
                                    "): sample outside family support");
    }
  };
  auto mean_log = [&] {
    double acc = 0.0;
    for (double x : samples) acc += std::log(x);
    return acc / static_cast<double>(samples.size());
  };

  switch (family) {
    case MarginalFamily::kNormal: {
      const double sd = std::sqrt(variance_of(samples, mean));
      if (!(sd > 0.0)) throw std::runtime_error("fit_parametric(normal): zero variance");
      m.params = {mean, sd};
      break;
    }
    case MarginalFamily::kStudentT: {
      // 1-D likelihood maximization over ln(nu).
      auto loglik = [&](double t) {
        const double nu = std::exp(t);
        double acc = 0.0;
        for (double x : samples) acc += student_t_logpdf(x, nu);
        return acc;
      };
      auto res = detail::golden_section_max(
          loglik, std::log(0.05), std::log(1000.0),
          [](double lo, double hi) { return std::exp(hi) - std::exp(lo) < 1e-4 * std::exp(lo); },
          200);
      m.params = {std::exp(res.x)};
      break;
    }
    case MarginalFamily::kGamma: {
      require_support(true);
      const double shape = fit_gamma_shape(std::log(mean) - mean_log());
      m.params = {shape, mean / shape};
      break;
    }
    case MarginalFamily::kExponential: {
      require_support(false);
      if (!(mean > 0.0)) throw std::runtime_error("fit_parametric(exponential): zero mean");
      m.params = {1.0 / mean};
      break;
    }
    case MarginalFamily::kLogNormal: {
      require_support(true);
      std::vector<double> logs(samples.begin(), samples.end());
      for (double& x : logs) x = std::log(x);
      const double lm = mean_of(logs);
      const double sd = std::sqrt(variance_of(logs, lm));
      if (!(sd > 0.0)) throw std::runtime_error("fit_parametric(lognormal): zero log variance");
      m.params = {lm, sd};
      break;
    }
    case MarginalFamily::kChiSquare: {
      require_support(true);
      m.params = {fit_chi_square_dof(mean_log())};
      break;
    }
  }
  m.validate();
  return m;
}

}  // namespace copclass
