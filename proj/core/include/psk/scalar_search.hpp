#pragma once

#include <algorithm>
#include <cmath>

namespace psk {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi]. Stops
// once the bracket is narrower than tol or after max_iterations.
template <typename F>
ScalarMaximum golden_section_maximize(F&& f, double lo, double hi,
                                      double tol = 1e-10,
                                      int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iterations && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarMaximum best{fc >= fd ? c : d, std::max(fc, fd), it};
  // The endpoints are never probed by the interior search.
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best.value) best = {x, fx, it};
  }
  return best;
}

// Concave maximization on [lo, hi]: golden section, then bisection on the
// analytic derivative inside a small window around the golden estimate.
// Function comparisons alone cannot resolve x finer than ~sqrt(eps) near a
// smooth maximum; the derivative sign can.
template <typename F, typename DF>
ScalarMaximum maximize_concave(F&& f, DF&& df, double lo, double hi,
                               double tol = 1e-10, int max_iterations = 200) {
  ScalarMaximum best = golden_section_maximize(f, lo, hi, tol, max_iterations);
  const double window = 1e-6;
  double a = std::max(lo, best.x - window);
  double b = std::min(hi, best.x + window);
  if (!(df(a) > 0.0 && df(b) < 0.0)) return best;
  for (int i = 0; i < 200 && b - a > 0.0; ++i) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (df(mid) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  if (fx >= best.value - 1e-15 * std::max(1.0, std::abs(best.value))) {
    best.x = x;
    best.value = fx;
  }
  return best;
}

}  // namespace psk
