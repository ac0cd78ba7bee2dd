#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "copclass/marginals.hpp"
#include "copclass/special_functions.hpp"
#include "support/oracles.hpp"

using namespace copclass;

TEST_CASE("ecdf_raw counts exactly") {
  const std::vector<double> s{1.0, 2.0, 3.0};
  CHECK(ecdf_raw(s, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(ecdf_raw(s, 0.0) == 0.0);
  CHECK(ecdf_raw(s, 5.0) == 1.0);
  CHECK_THROWS_AS(ecdf_raw(std::vector<double>{}, 1.0), std::invalid_argument);
}

TEST_CASE("ecdf_raw equals k/N at and above the k-th order statistic (brute force)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int n : {1, 2, 5, 17, 50}) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = unif(rng);
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 1; k <= n; ++k) {
      CHECK(ecdf_raw(xs, sorted[k - 1]) >= static_cast<double>(k) / n - 1e-15);
      CHECK(ecdf_raw(xs, sorted[k - 1] + 1e-9) >= static_cast<double>(k) / n - 1e-15);
    }
    // Strictly below the minimum the ecdf is 0.
    CHECK(ecdf_raw(xs, sorted.front() - 1e-9) == 0.0);
  }
}

TEST_CASE("fit_empirical requires at least 8 samples") {
  std::vector<double> seven{1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_AS(fit_empirical(seven), std::invalid_argument);
}

TEST_CASE("empirical cdf: rescaling, clamping, quantile knots") {
  std::vector<double> xs{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const EmpiricalMarginal m = fit_empirical(xs);
  const double n1 = 11.0;
  CHECK(m.cdf(10.0) == doctest::Approx(10.0 / n1).epsilon(1e-15));  // N/(N+1) at the max
  CHECK(m.cdf(1.0) == doctest::Approx(1.0 / n1).epsilon(1e-15));
  CHECK(m.cdf(-100.0) == doctest::Approx(1.0 / n1).epsilon(1e-15));  // clamped, never 0
  CHECK(m.cdf(100.0) == doctest::Approx(10.0 / n1).epsilon(1e-15));  // clamped, never 1
  // Grid exactness at sample points.
  CHECK(std::fabs(m.quantile(m.cdf(5.0)) - 5.0) < 1e-12);
  CHECK(std::fabs(m.quantile(m.cdf(2.0)) - 2.0) < 1e-12);
  // Interior quantiles stay monotone.
  double prev = -1e300;
  for (double p = 0.01; p < 1.0; p += 0.01) {
    const double q = m.quantile(p);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("empirical cdf near 0.5 for uniform samples (DKW bound)") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = unif(rng);
  const EmpiricalMarginal m = fit_empirical(xs);
  CHECK(std::fabs(m.cdf(0.5) - 0.5) < 0.02);
}

TEST_CASE("empirical logpdf approximates the exponential density") {
  std::mt19937_64 rng(4242);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = expo(rng);
  const EmpiricalMarginal m = fit_empirical(xs);
  CHECK(std::fabs(m.logpdf(1.0) + 1.0) < 0.15);
  // Far outside the observed range the density is floored.
  CHECK(m.logpdf(1e6) == doctest::Approx(std::log(1e-12)));
  CHECK(m.logpdf(-1e6) == doctest::Approx(std::log(1e-12)));
}

TEST_CASE("empirical density integrates to about 1 over its grid") {
  std::mt19937_64 rng(99);
  SUBCASE("normal samples") {
    std::normal_distribution<double> dist(2.0, 1.5);
    std::vector<double> xs(8000);
    for (auto& x : xs) x = dist(rng);
    const EmpiricalMarginal m = fit_empirical(xs);
    const double hi = m.grid_lo + m.grid_dx * (m.grid_logpdf.size() - 1);
    const double mass = oracles::integrate([&](double x) { return std::exp(m.logpdf(x)); },
                                           m.grid_lo, hi, 1e-8);
    CHECK(std::fabs(mass - 1.0) < 0.05);
  }
  SUBCASE("gamma samples") {
    std::gamma_distribution<double> dist(4.0, 2.0);
    std::vector<double> xs(8000);
    for (auto& x : xs) x = dist(rng);
    const EmpiricalMarginal m = fit_empirical(xs);
    const double hi = m.grid_lo + m.grid_dx * (m.grid_logpdf.size() - 1);
    const double mass = oracles::integrate([&](double x) { return std::exp(m.logpdf(x)); },
                                           m.grid_lo, hi, 1e-8);
    CHECK(std::fabs(mass - 1.0) < 0.05);
  }
}

TEST_CASE("probability integral transform yields uniform values (KS test)") {
  std::mt19937_64 rng(31337);
  const int n = 10000;
  const double threshold = 1.63 / std::sqrt(static_cast<double>(n));  // 99% level
  SUBCASE("gamma family") {
    std::gamma_distribution<double> dist(4.0, 2.0);
    std::vector<double> u(n);
    for (auto& v : u) v = gamma_cdf(dist(rng), 4.0, 2.0);
    CHECK(oracles::ks_uniform(u) < threshold);
  }
  SUBCASE("student t family") {
    std::student_t_distribution<double> dist(2.0);
    std::vector<double> u(n);
    for (auto& v : u) v = student_t_cdf(dist(rng), 2.0);
    CHECK(oracles::ks_uniform(u) < threshold);
  }
  SUBCASE("lognormal family") {
    std::lognormal_distribution<double> dist(0.64, 0.22);
    std::vector<double> u(n);
    for (auto& v : u) v = lognormal_cdf(dist(rng), 0.64, 0.22);
    CHECK(oracles::ks_uniform(u) < threshold);
  }
}

TEST_CASE("marginal dispatch matches the underlying family functions") {
  const Marginal normal = ParametricMarginal{MarginalFamily::kNormal, {0.0, 1.0}};
  CHECK(cdf(normal, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  const Marginal gam = ParametricMarginal{MarginalFamily::kGamma, {4.0, 2.0}};
  CHECK(logpdf(gam, 8.0) == gamma_logpdf(8.0, 4.0, 2.0));
  CHECK(quantile(gam, 0.37) == gamma_quantile(0.37, 4.0, 2.0));
  // Out-of-support points have log-density -inf rather than throwing.
  CHECK(logpdf(gam, -1.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("fit_parametric closed forms") {
  SUBCASE("exponential: rate is 1/mean") {
    std::vector<double> xs{1.0, 3.0, 2.0, 2.0, 1.5, 2.5, 2.0, 2.0};  // mean 2
    const auto m = fit_parametric(MarginalFamily::kExponential, xs);
    CHECK(m.params[0] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("normal: population variance convention") {
    std::vector<double> xs{-1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0};
    const auto m = fit_parametric(MarginalFamily::kNormal, xs);
    CHECK(std::fabs(m.params[0]) < 1e-12);
    CHECK(m.params[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("lognormal: moments of logs") {
    std::vector<double> xs{1.0, 2.0, 4.0, 1.0, 2.0, 4.0, 2.0, 2.0};
    const auto m = fit_parametric(MarginalFamily::kLogNormal, xs);
    double acc = 0.0;
    for (double x : xs) acc += std::log(x);
    CHECK(m.params[0] == doctest::Approx(acc / 8.0).epsilon(1e-12));
  }
  SUBCASE("support violations are rejected") {
    std::vector<double> xs{1.0, -2.0, 3.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(fit_parametric(MarginalFamily::kGamma, xs), std::invalid_argument);
    CHECK_THROWS_AS(fit_parametric(MarginalFamily::kLogNormal, xs), std::invalid_argument);
  }
}

TEST_CASE("fit_parametric recovers gamma and t parameters from large samples") {
  std::mt19937_64 rng(2024);
  SUBCASE("gamma(4, 2)") {
    std::gamma_distribution<double> dist(4.0, 2.0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = dist(rng);
    const auto m = fit_parametric(MarginalFamily::kGamma, xs);
    CHECK(std::fabs(m.params[0] - 4.0) < 0.1);
    CHECK(std::fabs(m.params[1] - 2.0) < 0.1);
  }
  SUBCASE("student t, nu = 5") {
    std::student_t_distribution<double> dist(5.0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = dist(rng);
    const auto m = fit_parametric(MarginalFamily::kStudentT, xs);
    CHECK(std::fabs(m.params[0] - 5.0) < 0.5);
  }
  SUBCASE("chi-square(3.2)") {
    std::gamma_distribution<double> dist(1.6, 2.0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = dist(rng);
    const auto m = fit_parametric(MarginalFamily::kChiSquare, xs);
    CHECK(std::fabs(m.params[0] - 3.2) < 0.1);
  }
}

TEST_CASE("empirical cdf output always stays inside (0, 1) so quantile transforms are finite") {
  std::mt19937_64 rng(5);
  std::student_t_distribution<double> dist(2.0);
  std::vector<double> xs(500);
  for (auto& x : xs) x = dist(rng);
  const EmpiricalMarginal m = fit_empirical(xs);
  for (double x : {-1e12, -5.0, 0.0, 3.0, 1e12}) {
    const double u = m.cdf(x);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(std::isfinite(normal_quantile(u)));
    CHECK(std::isfinite(student_t_quantile(u, 4.0)));
  }
}
