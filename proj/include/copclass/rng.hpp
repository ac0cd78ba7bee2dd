#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace copclass {

// Deterministic random source used by the samplers and the data generator.
// mt19937_64 has a fully specified output stream, and every variate below is
// built from explicit arithmetic on that stream, so a fixed seed reproduces
// the same draws on every platform with IEEE doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Derives a child seed from (seed, salt); splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1).
  double uniform_open() {
    for (;;) {
      double u = uniform();
      if (u > 0.0) return u;
    }
  }

  // Unbiased integer in [0, n); masked rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t r = engine_() & mask;
      if (r < n) return r;
    }
  }

  // Standard normal via the Marsaglia polar method (second draw cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 boosted by the U^(1/shape)
  // trick.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
      double u = uniform_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

  // Fisher-Yates with explicit bounded draws so shuffles are reproducible
  // across standard libraries (std::shuffle is implementation-defined).
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace copclass
