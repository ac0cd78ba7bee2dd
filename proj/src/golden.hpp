#pragma once

#include <cmath>

namespace copclass::detail {

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Golden-section maximization of a unimodal f on [lo, hi]. The stop predicate
// receives the current bracket and returns true once it is tight enough.
template <typename F, typename Stop>
GoldenResult golden_section_max(const F& f, double lo, double hi, const Stop& stop, int max_iter) {
  const double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  GoldenResult result;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (stop(lo, hi)) {
      result.converged = true;
      break;
    }
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  result.iterations = it;
  if (f1 >= f2) {
    result.x = x1;
    result.fx = f1;
  } else {
    result.x = x2;
    result.fx = f2;
  }
  return result;
}

}  // namespace copclass::detail
