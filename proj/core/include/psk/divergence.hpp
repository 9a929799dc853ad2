#pragma once

#include <cstdint>

namespace psk {

// Mean counts of the two Poisson observation kernels being compared.
class RatePair {
 public:
  // Throws std::invalid_argument unless both rates are finite and > 0.
  RatePair(double lambda0, double lambda1);

  double lambda0() const { return lambda0_; }
  double lambda1() const { return lambda1_; }

  // |lambda0 - lambda1| <= 1e-14 * max(lambda0, lambda1).
  bool degenerate() const;

 private:
  double lambda0_;
  double lambda1_;
};

struct ChernoffOptimum {
  double s_star = 0.5;
  double value = 0.0;
};

// log Poi(y; rate) via lgamma. Throws std::invalid_argument for rate <= 0.
double poisson_log_pmf(double rate, std::uint64_t y);

// Closed-form Chernoff s-divergence between Poi(lambda0) and Poi(lambda1):
//   s*lambda0 + (1-s)*lambda1 - lambda0^s * lambda1^(1-s).
double chernoff_s(const RatePair& pair, double s);

// d/ds of chernoff_s. Monotonically decreasing in s.
double chernoff_s_derivative(const RatePair& pair, double s);

// Independent route: -log sum_y p0(y)^s p1(y)^(1-s), summed term by term until
// the summand relative to the running sum stays below tail_tol for five
// consecutive counts past the mode.
double chernoff_s_series(const RatePair& pair, double s, double tail_tol);

// max over s in [0,1] of chernoff_s. Equal rates yield (1/2, 0).
ChernoffOptimum max_chernoff(const RatePair& pair);

// Maximizer of chernoff_s expressed through the rate ratio R = lambda0/lambda1
// for R in (0,1):  S(R) = log((R-1)/log R) / log R.  Strictly increasing,
// with range (0, 1/2).
double s_star_ratio(double ratio);

// KL(Poi(a) || Poi(b)) = a log(a/b) + b - a.
double kl_poisson(double a, double b);

// Rate of the s-tilted Poisson lambda0^s lambda1^(1-s). At s = s_star it is
// KL-equidistant from both kernels.
double tilted_rate(const RatePair& pair, double s);

}  // namespace psk
