#include <cmath>
#include <doctest.h>

#include "copclass/special_functions.hpp"
#include "support/oracles.hpp"

using namespace copclass;

TEST_CASE("ln_gamma matches high-precision reference values") {
  CHECK(std::fabs(ln_gamma(1.0)) < 1e-12);
  CHECK(std::fabs(ln_gamma(2.0)) < 1e-12);
  CHECK(std::fabs(ln_gamma(0.5) - 0.57236494292470008707) < 1e-12);
  CHECK(std::fabs(ln_gamma(5.0) - 3.1780538303479456196) < 1e-12);
  CHECK(std::fabs(ln_gamma(10.3) - 13.482036786138356971) < 1e-12);
  CHECK(std::fabs(ln_gamma(123.45) - 469.57667630038190109) < 1e-11);
  // Large arguments: relative accuracy (absolute double precision is not
  // representable at this magnitude).
  CHECK(std::fabs(ln_gamma(1e6) / 12815504.56914761166 - 1.0) < 1e-14);
  CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("digamma and trigamma satisfy recurrence and special values") {
  // psi(1) = -euler_gamma
  CHECK(std::fabs(digamma(1.0) + 0.57721566490153286061) < 1e-12);
  // psi(x+1) = psi(x) + 1/x
  for (double x : {0.3, 1.7, 4.2, 11.0}) {
    CHECK(std::fabs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-12);
    CHECK(std::fabs(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x)) < 1e-12);
  }
  // psi'(1) = pi^2 / 6
  CHECK(std::fabs(trigamma(1.0) - M_PI * M_PI / 6.0) < 1e-12);
}

TEST_CASE("normal cdf agrees with the quadrature oracle") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(8.0) > 1.0 - 1e-14);
  // Phi(1) via adaptive quadrature of the density on [0, 1] plus 0.5.
  const double phi1 = 0.5 + oracles::integrate([](double t) { return normal_pdf(t); }, 0.0, 1.0);
  CHECK(std::fabs(normal_cdf(1.0) - phi1) < 1e-12);
  CHECK(std::fabs(normal_cdf(1.0) - 0.84134474606854294859) < 1e-12);
  CHECK(std::fabs(normal_cdf(2.5) - 0.99379033467422386483) < 1e-12);
  CHECK(std::fabs(normal_cdf(-3.7) - 0.00010779973347738833694) < 1e-15);
}

TEST_CASE("normal quantile: reference points, symmetry, bisection oracle") {
  CHECK(std::fabs(normal_quantile(0.5)) < 1e-15);
  CHECK(std::fabs(normal_quantile(0.975) - 1.9599639845400542355) < 1e-12);
  CHECK(std::fabs(normal_quantile(0.9) - 1.281551565544600467) < 1e-12);
  CHECK(std::fabs(normal_quantile(1e-6) + 4.7534243088228989482) < 1e-11);
  for (double p : {0.001, 0.0321, 0.2, 0.437, 0.499})
    CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-13));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);

  // Bisection-on-cdf oracle across a dense grid.
  int checked = 0;
  for (int i = 1; i < 10000; i += 7) {
    const double p = static_cast<double>(i) / 10000.0;
    const double ref = oracles::bisect_inverse([](double x) { return normal_cdf(x); }, p, -10.0, 10.0);
    CHECK(std::fabs(normal_quantile(p) - ref) < 1e-10);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("normal quantile round trip over the full contract range") {
  for (double p = 1e-12; p < 1.0 - 1e-12; p = p < 0.001 ? p * 2.3 : p + 0.007) {
    const double x = normal_quantile(p);
    CHECK(std::fabs(normal_cdf(x) - p) <= 1e-10);
  }
  const double p_hi = 1.0 - 1e-12;
  CHECK(std::fabs(normal_cdf(normal_quantile(p_hi)) - p_hi) <= 1e-10);
}

TEST_CASE("student t cdf: symmetry and closed forms") {
  CHECK(student_t_cdf(0.0, 5.0) == doctest::Approx(0.5).epsilon(1e-15));
  // Cauchy closed form: F(1) = 1/2 + atan(1)/pi = 3/4.
  CHECK(std::fabs(student_t_cdf(1.0, 1.0) - 0.75) < 1e-14);
  CHECK(std::fabs(student_t_cdf(1.5, 3.0) - 0.88470806737758847386) < 1e-13);
  CHECK(std::fabs(student_t_cdf(-0.7, 7.0) - 0.25325877609779988781) < 1e-13);
  CHECK(std::fabs(student_t_cdf(2.0, 2.0) - 0.90824829046386301637) < 1e-13);
  CHECK_THROWS_AS(student_t_cdf(0.0, 0.0), std::domain_error);
}

TEST_CASE("student t quantile: symmetry and cdf round trip") {
  CHECK(std::fabs(student_t_quantile(0.5, 2.0)) < 1e-15);
  for (double nu : {1.0, 2.0, 2.7, 4.0, 8.0, 30.0, 250.0}) {
    for (double p = 1e-9; p < 1.0; p = p < 0.01 ? p * 5.0 : p + 0.0619) {
      const double x = student_t_quantile(p, nu);
      CHECK(std::fabs(student_t_cdf(x, nu) - p) <= 1e-9);
    }
    for (double p : {0.01, 0.2, 0.45})
      CHECK(student_t_quantile(p, nu) ==
            doctest::Approx(-student_t_quantile(1.0 - p, nu)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(student_t_quantile(0.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(student_t_quantile(1.0, 3.0), std::domain_error);
}

TEST_CASE("student t logpdf matches reference and integrates to 1") {
  CHECK(std::fabs(student_t_logpdf(1.2, 4.0) + 1.749541002381627838) < 1e-13);
  for (double nu : {1.0, 3.0, 8.0}) {
    // Integrate the density over a wide interval plus analytic tails via cdf.
    const double body = oracles::integrate(
        [nu](double t) { return std::exp(student_t_logpdf(t, nu)); }, -60.0, 60.0, 1e-10);
    const double tails = student_t_cdf(-60.0, nu) + (1.0 - student_t_cdf(60.0, nu));
    CHECK(std::fabs(body + tails - 1.0) < 1e-6);
  }
}

TEST_CASE("gamma distribution: quadrature oracle for mean, cdf reference") {
  // Mean of Gamma(4, 2) by quadrature of x f(x).
  const double mean = oracles::integrate(
      [](double x) { return x * std::exp(gamma_logpdf(x, 4.0, 2.0)); }, 1e-12, 200.0, 1e-9);
  CHECK(std::fabs(mean - 8.0) < 1e-6);
  CHECK(std::fabs(gamma_cdf(8.0, 4.0, 2.0) - 0.56652987963329106638) < 1e-13);
  CHECK(std::fabs(gamma_cdf(1.0, 0.5, 1.0) - 0.84270079294971486934) < 1e-13);
  CHECK(gamma_cdf(-1.0, 4.0, 2.0) == 0.0);
  CHECK_THROWS_AS(gamma_logpdf(-0.5, 4.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(gamma_quantile(0.5, -1.0, 2.0), std::domain_error);
}

TEST_CASE("exponential distribution closed forms") {
  CHECK(exponential_cdf(0.0, 0.7) == 0.0);
  CHECK(std::fabs(exponential_quantile(1.0 - std::exp(-1.0), 1.0) - 1.0) < 1e-14);
  CHECK(std::fabs(exponential_logpdf(2.0, 0.7) - (std::log(0.7) - 1.4)) < 1e-14);
  CHECK_THROWS_AS(exponential_logpdf(-0.1, 0.7), std::domain_error);
}

TEST_CASE("lognormal cdf reference and quantile round trip") {
  CHECK(std::fabs(lognormal_cdf(2.0, 0.64, 0.22) - 0.59544645086423308468) < 1e-13);
  CHECK(lognormal_cdf(0.0, 0.0, 1.0) == 0.0);
  for (double p : {0.001, 0.1, 0.5, 0.93, 0.9999})
    CHECK(std::fabs(lognormal_cdf(lognormal_quantile(p, 0.53, 0.36), 0.53, 0.36) - p) < 1e-12);
}

TEST_CASE("chi-square delegates to gamma(dof/2, 2)") {
  for (double x : {0.3, 1.0, 3.2, 9.7}) {
    CHECK(chi_square_cdf(x, 3.2) == gamma_cdf(x, 1.6, 2.0));
    CHECK(chi_square_logpdf(x, 3.2) == gamma_logpdf(x, 1.6, 2.0));
  }
  CHECK(chi_square_quantile(0.37, 5.0) == gamma_quantile(0.37, 2.5, 2.0));
}

TEST_CASE("cdf/quantile round trips within 1e-8 for every family") {
  const auto grid = [](double lo, double hi, int n, auto&& f) {
    for (int i = 1; i < n; ++i) f(lo + (hi - lo) * i / n);
  };
  grid(0.0, 1.0, 211, [](double p) {
    CHECK(std::fabs(gamma_cdf(gamma_quantile(p, 4.3, 1.7), 4.3, 1.7) - p) < 1e-9);
    CHECK(std::fabs(chi_square_cdf(chi_square_quantile(p, 3.2), 3.2) - p) < 1e-9);
    CHECK(std::fabs(exponential_cdf(exponential_quantile(p, 0.32), 0.32) - p) < 1e-12);
    CHECK(std::fabs(student_t_cdf(student_t_quantile(p, 2.0), 2.0) - p) < 1e-9);
    CHECK(std::fabs(normal_cdf(normal_quantile(p)) - p) < 1e-10);
  });
}

TEST_CASE("cdfs are nondecreasing on dense grids") {
  auto check_monotone = [](auto&& cdf, double lo, double hi) {
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = lo + (hi - lo) * i / 1000.0;
      const double v = cdf(x);
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  };
  check_monotone([](double x) { return normal_cdf(x); }, -9.0, 9.0);
  check_monotone([](double x) { return student_t_cdf(x, 2.0); }, -50.0, 50.0);
  check_monotone([](double x) { return gamma_cdf(x, 4.0, 2.0); }, 0.0, 60.0);
  check_monotone([](double x) { return exponential_cdf(x, 0.7); }, 0.0, 30.0);
  check_monotone([](double x) { return lognormal_cdf(x, 0.64, 0.22); }, 0.0, 12.0);
  check_monotone([](double x) { return chi_square_cdf(x, 3.2); }, 0.0, 40.0);
}

TEST_CASE("densities integrate to 1 by quadrature") {
  auto mass = [](auto&& logpdf, double lo, double hi) {
    return oracles::integrate([&](double x) { return std::exp(logpdf(x)); }, lo, hi, 1e-10);
  };
  CHECK(std::fabs(mass([](double x) { return normal_logpdf(x); }, -12.0, 12.0) - 1.0) < 1e-6);
  CHECK(std::fabs(mass([](double x) { return gamma_logpdf(x, 4.0, 2.0); }, 1e-9, 150.0) - 1.0) < 1e-6);
  CHECK(std::fabs(mass([](double x) { return exponential_logpdf(x, 0.7); }, 0.0, 80.0) - 1.0) < 1e-6);
  CHECK(std::fabs(mass([](double x) { return lognormal_logpdf(x, 0.64, 0.22); }, 1e-9, 30.0) - 1.0) < 1e-6);
  CHECK(std::fabs(mass([](double x) { return chi_square_logpdf(x, 3.2); }, 1e-9, 90.0) - 1.0) < 1e-4);
}
