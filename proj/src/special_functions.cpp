#include "copclass/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace copclass {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kEps = 1e-15;
const double kFpMin = std::numeric_limits<double>::min() / kEps;

[[noreturn]] void domain_fail(const char* fn, const char* what) {
  throw std::domain_error(std::string(fn) + ": " + what);
}

void require_finite(const char* fn, double x) {
  if (!std::isfinite(x)) domain_fail(fn, "argument must be finite");
}

// Series expansion of P(a, x), good for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < 100000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
}

// Lentz continued fraction for Q(a, x), good for x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 100000; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
}

// Lentz continued fraction for the incomplete beta; call with
// x < (a + 1) / (a + b + 2).
double beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return h;
}

// Generic safeguarded Newton inversion of a cdf. Maintains a bracket
// [lo, hi] with cdf(lo) <= p <= cdf(hi) and falls back to bisection whenever
// a Newton step leaves it.
template <typename Cdf, typename Pdf>
double invert_cdf(double p, double lo, double hi, double x0, const Cdf& cdf, const Pdf& pdf) {
  double x = std::min(std::max(x0, lo), hi);
  for (int it = 0; it < 200; ++it) {
    double f = cdf(x) - p;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    if (std::fabs(f) <= 1e-15 * (p + 1e-300) + 1e-16) break;
    double g = pdf(x);
    double step = (g > 0.0 && std::isfinite(g)) ? f / g : 0.0;
    double next = x - step;
    if (!(next > lo && next < hi) || step == 0.0) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-14 * (std::fabs(x) + 1e-14)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) domain_fail("ln_gamma", "argument must be positive");
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) domain_fail("digamma", "argument must be positive");
  double result = 0.0;
  while (x < 10.0) {  // shift into the asymptotic range
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Asymptotic series: ln x - 1/(2x) - sum B_2n / (2n x^(2n)).
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
  return result;
}

double trigamma(double x) {
  if (!(x > 0.0)) domain_fail("trigamma", "argument must be positive");
  double result = 0.0;
  while (x < 10.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += inv * (1.0 + 0.5 * inv +
                   inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))));
  return result;
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) domain_fail("regularized_gamma_p", "shape must be positive");
  if (x < 0.0) domain_fail("regularized_gamma_p", "x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double regularized_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) domain_fail("regularized_beta", "a and b must be positive");
  if (x < 0.0 || x > 1.0) domain_fail("regularized_beta", "x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double bt =
      std::exp(ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double normal_logpdf(double x) { return -0.5 * x * x - kLnSqrt2Pi; }

double normal_cdf(double x) {
  require_finite("normal_cdf", x);
  return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) domain_fail("normal_quantile", "p must lie strictly in (0, 1)");
  // Acklam's rational approximation, then two Halley corrections against the
  // erfc-based cdf.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    double e = normal_cdf(x) - p;
    if (e == 0.0) break;
    // u = e / pdf(x), formed in log space so the tail does not overflow.
    double u = std::copysign(std::exp(std::log(std::fabs(e)) + 0.5 * x * x + kLnSqrt2Pi), e);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double student_t_logpdf(double x, double nu) {
  if (!(nu > 0.0)) domain_fail("student_t_logpdf", "nu must be positive");
  require_finite("student_t_logpdf", x);
  return ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu) - 0.5 * std::log(nu * kPi) -
         0.5 * (nu + 1.0) * std::log1p(x * x / nu);
}

double student_t_cdf(double x, double nu) {
  if (!(nu > 0.0)) domain_fail("student_t_cdf", "nu must be positive");
  require_finite("student_t_cdf", x);
  const double p = 0.5 * regularized_beta(nu / (nu + x * x), 0.5 * nu, 0.5);
  return x <= 0.0 ? p : 1.0 - p;
}

double student_t_quantile(double p, double nu) {
  if (!(nu > 0.0)) domain_fail("student_t_quantile", "nu must be positive");
  if (!(p > 0.0 && p < 1.0)) domain_fail("student_t_quantile", "p must lie strictly in (0, 1)");
  if (p == 0.5) return 0.0;
  if (nu == 1.0) return std::tan(kPi * (p - 0.5));  // Cauchy
  if (nu == 2.0) {
    double q = 2.0 * p - 1.0;
    return q * std::sqrt(2.0 / (1.0 - q * q));
  }
  // Solve on the lower half and mirror.
  const bool upper = p > 0.5;
  const double ps = upper ? 1.0 - p : p;
  // Initial guess: Cornish-Fisher expansion around the normal quantile for
  // moderate ps, power-law tail inversion otherwise.
  double x0;
  if (ps > 0.05) {
    double z = normal_quantile(ps);
    double z2 = z * z;
    x0 = z + z * (z2 + 1.0) / (4.0 * nu) + z * (5.0 * z2 * z2 + 16.0 * z2 + 3.0) / (96.0 * nu * nu);
  } else {
    double log_amp = ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu) - 0.5 * std::log(nu * kPi) +
                     0.5 * (nu + 1.0) * std::log(nu) - std::log(nu);
    x0 = -std::exp((log_amp - std::log(ps)) / nu);
  }
  double lo = -1.0, hi = 0.0;
  while (student_t_cdf(lo, nu) > ps) lo *= 8.0;
  double x = invert_cdf(
      ps, lo, hi, x0, [nu](double t) { return student_t_cdf(t, nu); },
      [nu](double t) { return std::exp(student_t_logpdf(t, nu)); });
  return upper ? -x : x;
}

double gamma_logpdf(double x, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) domain_fail("gamma_logpdf", "shape and scale must be positive");
  if (x < 0.0) domain_fail("gamma_logpdf", "x below support");
  if (x == 0.0) {
    if (shape > 1.0) return -std::numeric_limits<double>::infinity();
    if (shape == 1.0) return -std::log(scale);
    return std::numeric_limits<double>::infinity();
  }
  return (shape - 1.0) * std::log(x) - x / scale - ln_gamma(shape) - shape * std::log(scale);
}

double gamma_cdf(double x, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) domain_fail("gamma_cdf", "shape and scale must be positive");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(shape, x / scale);
}

double gamma_quantile(double p, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) domain_fail("gamma_quantile", "shape and scale must be positive");
  if (!(p > 0.0 && p < 1.0)) domain_fail("gamma_quantile", "p must lie strictly in (0, 1)");
  // Wilson-Hilferty start; small-p series inversion when it collapses.
  double z = normal_quantile(p);
  double wh = shape * std::pow(1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape)), 3.0);
  double x0 = wh;
  if (!(x0 > 0.0)) x0 = std::exp((std::log(p) + ln_gamma(shape) + std::log(shape)) / shape);
  double hi = std::max(x0 * 4.0, shape * 4.0 + 16.0);
  while (regularized_gamma_p(shape, hi) < p) hi *= 4.0;
  double x = invert_cdf(
      p, 0.0, hi, x0, [shape](double t) { return regularized_gamma_p(shape, t); },
      [shape](double t) {
        return t > 0.0 ? std::exp((shape - 1.0) * std::log(t) - t - ln_gamma(shape)) : 0.0;
      });
  return x * scale;
}

double exponential_logpdf(double x, double rate) {
  if (!(rate > 0.0)) domain_fail("exponential_logpdf", "rate must be positive");
  if (x < 0.0) domain_fail("exponential_logpdf", "x below support");
  return std::log(rate) - rate * x;
}

double exponential_cdf(double x, double rate) {
  if (!(rate > 0.0)) domain_fail("exponential_cdf", "rate must be positive");
  if (x <= 0.0) return 0.0;
  return -std::expm1(-rate * x);
}

double exponential_quantile(double p, double rate) {
  if (!(rate > 0.0)) domain_fail("exponential_quantile", "rate must be positive");
  if (!(p > 0.0 && p < 1.0)) domain_fail("exponential_quantile", "p must lie strictly in (0, 1)");
  return -std::log1p(-p) / rate;
}

double lognormal_logpdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) domain_fail("lognormal_logpdf", "sigma must be positive");
  if (x <= 0.0) domain_fail("lognormal_logpdf", "x below support");
  const double z = (std::log(x) - mu) / sigma;
  return -0.5 * z * z - kLnSqrt2Pi - std::log(sigma) - std::log(x);
}

double lognormal_cdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) domain_fail("lognormal_cdf", "sigma must be positive");
  if (x <= 0.0) return 0.0;
  return normal_cdf((std::log(x) - mu) / sigma);
}

double lognormal_quantile(double p, double mu, double sigma) {
  if (!(sigma > 0.0)) domain_fail("lognormal_quantile", "sigma must be positive");
  if (!(p > 0.0 && p < 1.0)) domain_fail("lognormal_quantile", "p must lie strictly in (0, 1)");
  return std::exp(mu + sigma * normal_quantile(p));
}

double chi_square_logpdf(double x, double dof) {
  if (!(dof > 0.0)) domain_fail("chi_square_logpdf", "dof must be positive");
  return gamma_logpdf(x, 0.5 * dof, 2.0);
}

double chi_square_cdf(double x, double dof) {
  if (!(dof > 0.0)) domain_fail("chi_square_cdf", "dof must be positive");
  return gamma_cdf(x, 0.5 * dof, 2.0);
}

double chi_square_quantile(double p, double dof) {
  if (!(dof > 0.0)) domain_fail("chi_square_quantile", "dof must be positive");
  return gamma_quantile(p, 0.5 * dof, 2.0);
}

}  // namespace copclass
