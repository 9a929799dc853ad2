#include "psk/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psk/scalar_search.hpp"

namespace psk {
namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("Chernoff parameter s must lie in [0,1], got " +
                                std::to_string(s));
  }
}

void check_rate(double rate, const char* what) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument(std::string(what) +
                                " must be a finite positive rate, got " +
                                std::to_string(rate));
  }
}

}  // namespace

RatePair::RatePair(double lambda0, double lambda1)
    : lambda0_(lambda0), lambda1_(lambda1) {
  check_rate(lambda0, "lambda0");
  check_rate(lambda1, "lambda1");
}

bool RatePair::degenerate() const {
  return std::abs(lambda0_ - lambda1_) <=
         1e-14 * std::max(lambda0_, lambda1_);
}

double poisson_log_pmf(double rate, std::uint64_t y) {
  check_rate(rate, "rate");
  const double k = static_cast<double>(y);
  if (y == 0) return -rate;
  return k * std::log(rate) - rate - std::lgamma(k + 1.0);
}

double chernoff_s(const RatePair& pair, double s) {
  check_s(s);
  if (pair.degenerate() || s == 0.0 || s == 1.0) return 0.0;
  const double l1 = pair.lambda1();
  // With u = log(lambda0/lambda1):  C_s / lambda1 = s expm1(u) - expm1(s u).
  const double u = std::log1p((pair.lambda0() - l1) / l1);
  double scaled = 0.0;
  if (std::abs(u) < 0.5) {
    // sum_{k>=2} (s - s^k) u^k / k!, every coefficient in [0, s].
    const double log_s = std::log(s);
    double power = u;
    for (int k = 2; k < 64; ++k) {
      power *= u / k;
      const double term = -s * std::expm1((k - 1) * log_s) * power;
      scaled += term;
      if (std::abs(term) <= 1e-17 * std::abs(scaled)) break;
    }
  } else if (s <= 0.5) {
    scaled = s * std::expm1(u) - std::expm1(s * u);
  } else {
    const double t = 1.0 - s;
    scaled = -std::exp(u) * std::expm1(-t * u) - t * std::expm1(u);
  }
  return std::max(0.0, l1 * scaled);
}

double chernoff_s_derivative(const RatePair& pair, double s) {
  const double l0 = pair.lambda0();
  const double l1 = pair.lambda1();
  const double log_ratio = std::log(l0) - std::log(l1);
  return l0 - l1 - tilted_rate(pair, s) * log_ratio;
}

double chernoff_s_series(const RatePair& pair, double s, double tail_tol) {
  check_s(s);
  if (!(tail_tol > 0.0)) {
    throw std::invalid_argument("tail_tol must be positive");
  }
  const double l0 = pair.lambda0();
  const double l1 = pair.lambda1();
  auto log_term = [&](std::uint64_t y) {
    return s * poisson_log_pmf(l0, y) + (1.0 - s) * poisson_log_pmf(l1, y);
  };

  // Terms are shifted by the log-summand at the mode of t^y / y!, the
  // largest one, so the running sum stays O(1) for any rate magnitude.
  const double t = std::pow(l0, s) * std::pow(l1, 1.0 - s);
  const auto mode = static_cast<std::uint64_t>(std::floor(t));
  const double shift = log_term(mode);

  double sum = 0.0;
  int quiet = 0;
  for (std::uint64_t y = 0;; ++y) {
    const double term = std::exp(log_term(y) - shift);
    sum += term;
    if (y > mode && term < tail_tol * sum) {
      if (++quiet >= 5) break;
    } else {
      quiet = 0;
    }
  }
  return std::max(0.0, -(std::log(sum) + shift));
}

ChernoffOptimum max_chernoff(const RatePair& pair) {
  if (pair.degenerate()) return {0.5, 0.0};
  const auto best = maximize_concave(
      [&](double s) { return chernoff_s(pair, s); },
      [&](double s) { return chernoff_s_derivative(pair, s); }, 0.0, 1.0);
  return {best.x, best.value};
}

double s_star_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("s_star_ratio requires R in (0,1)");
  }
  const double x = std::log(ratio);
  // q = (R - 1)/log R - 1 = expm1(x)/x - 1, expanded near R = 1 where the
  // quotient loses all significant digits.
  double q;
  if (std::abs(x) < 1e-4) {
    q = x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  } else {
    q = std::expm1(x) / x - 1.0;
  }
  if (std::abs(x) < 1e-8) return 0.5 + x / 24.0;
  return std::log1p(q) / x;
}

double kl_poisson(double a, double b) {
  check_rate(a, "a");
  check_rate(b, "b");
  return std::max(0.0, a * std::log(a / b) + b - a);
}

double tilted_rate(const RatePair& pair, double s) {
  check_s(s);
  if (s == 1.0) return pair.lambda0();
  if (s == 0.0) return pair.lambda1();
  return std::exp(s * std::log(pair.lambda0()) +
                  (1.0 - s) * std::log(pair.lambda1()));
}

}  // namespace psk
