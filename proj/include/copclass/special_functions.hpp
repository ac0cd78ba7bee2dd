#pragma once

// Special-function and univariate-distribution kernel. Everything here is a
// pure function of its arguments; domain violations throw std::domain_error.
//
// Parameter conventions:
//   gamma_*(x, shape, scale)        density x^(shape-1) e^(-x/scale)
//   exponential_*(x, rate)          density rate * e^(-rate x)
//   lognormal_*(x, mu, sigma)       mu/sigma are the log-space parameters
//   chi_square_*(x, dof)            == gamma with shape dof/2, scale 2
//   student_t_*(x, nu)              standard (location 0, scale 1)

namespace copclass {

double ln_gamma(double x);  // x > 0
double digamma(double x);   // x > 0
double trigamma(double x);  // x > 0

// Regularized lower incomplete gamma P(a, x); series / continued fraction.
double regularized_gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b); Lentz continued fraction.
double regularized_beta(double x, double a, double b);

double normal_pdf(double x);
double normal_logpdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);  // 0 < p < 1

double student_t_logpdf(double x, double nu);
double student_t_cdf(double x, double nu);
double student_t_quantile(double p, double nu);

double gamma_logpdf(double x, double shape, double scale);
double gamma_cdf(double x, double shape, double scale);
double gamma_quantile(double p, double shape, double scale);

double exponential_logpdf(double x, double rate);
double exponential_cdf(double x, double rate);
double exponential_quantile(double p, double rate);

double lognormal_logpdf(double x, double mu, double sigma);
double lognormal_cdf(double x, double mu, double sigma);
double lognormal_quantile(double p, double mu, double sigma);

double chi_square_logpdf(double x, double dof);
double chi_square_cdf(double x, double dof);
double chi_square_quantile(double p, double dof);

}  // namespace copclass
