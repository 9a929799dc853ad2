#include "psk/divergence.hpp"

#include "check_near.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

namespace psk {
namespace {

// Frozen from 40-digit mpmath evaluations.
constexpr double kLogPmf802At40 = -35.06310283962047033977640263657506;
constexpr double kSeries13Half = 0.26794919243112270647255365849412763;
constexpr double kKl21 = 0.38629436111989061883446424291635313;
constexpr double kKennedySStar = 0.29917600164816317517597680442335413;
constexpr double kKennedyValue = 2.14595769827296744267148775212543201;
constexpr double kKennedyTilted = 0.66733829513437985662460503018115147;
constexpr double kSqrt09SStar = 0.30573700216274701870870380389464054;
constexpr double kSqrt09Value = 1.98240728623461605328071474049266699;

// Test-side oracle: KL by direct summation of p log(p/q).
double kl_by_summation(double a, double b) {
  double total = 0.0;
  for (int y = 0; y < 200; ++y) {
    const double lp = poisson_log_pmf(a, y);
    const double lq = poisson_log_pmf(b, y);
    total += std::exp(lp) * (lp - lq);
  }
  return total;
}

TEST_CASE("PoissonLogPmf: ZeroCountAtUnitRate") {
  CHECK_EQ(poisson_log_pmf(1.0, 0), doctest::Approx(-1.0));
}

TEST_CASE("PoissonLogPmf: AlgebraicIdentity") {
  CHECK_NEAR(poisson_log_pmf(2.0, 2), std::log(2.0) - 2.0, 1e-15);
}

TEST_CASE("PoissonLogPmf: MatchesHighPrecision") {
  CHECK_NEAR(poisson_log_pmf(8.02, 40), kLogPmf802At40, 1e-12);
}

TEST_CASE("PoissonLogPmf: RejectsNonPositiveRate") {
  CHECK_THROWS_AS(poisson_log_pmf(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(poisson_log_pmf(-1.0, 1), std::invalid_argument);
}

TEST_CASE("RatePair: RejectsNonPositive") {
  CHECK_THROWS_AS(RatePair(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RatePair(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(RatePair(NAN, 1.0), std::invalid_argument);
}

TEST_CASE("ChernoffS: IdenticalRatesGiveZero") {
  CHECK_EQ(chernoff_s(RatePair(2.0, 2.0), 0.5), 0.0);
}

TEST_CASE("ChernoffS: EndpointsVanish") {
  const RatePair p(1.0, 3.0);
  CHECK_EQ(chernoff_s(p, 0.0), 0.0);
  CHECK_EQ(chernoff_s(p, 1.0), 0.0);
}

TEST_CASE("ChernoffS: LowSnrPointMassValue") {
  CHECK_NEAR(chernoff_s(RatePair(0.0126334, 3.8073666), 0.31), 1.9822, 2e-3);
}

TEST_CASE("ChernoffS: NoCancellationInHardRegimes") {
  // 50-digit mpmath references evaluated at the exact binary inputs.
  struct Case {
    double a, b, s, expected, rel;
  };
  const Case cases[] = {
      {1.0, 1.000001, 0.3, 1.049999544827501775236622e-13, 1e-12},
      {0.01, 4.01, 0.999999999, 3.940060274114778445218285e-9, 1e-12},
      {0.01, 4.01, 1e-9, 2.003578525146455752714759e-8, 1e-12},
      {2.5, 2.4, 0.5, 0.0005102572168219018027159253, 1e-12},
  };
  for (const auto& c : cases) {
    INFO(c.a << " " << c.b << " " << c.s);
    CHECK_NEAR(chernoff_s(RatePair(c.a, c.b), c.s) / c.expected, 1.0, c.rel);
  }
}

TEST_CASE("ChernoffS: RejectsOutOfRangeS") {
  CHECK_THROWS_AS(chernoff_s(RatePair(1.0, 2.0), -0.1), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_s(RatePair(1.0, 2.0), 1.1), std::invalid_argument);
}

TEST_CASE("ChernoffSeries: HalfOrderOneThree") {
  const double v = chernoff_s_series(RatePair(1.0, 3.0), 0.5, 1e-15);
  CHECK_NEAR(v, kSeries13Half, 1e-14);
  CHECK_NEAR(v, 2.0 - std::sqrt(3.0), 1e-14);
}

TEST_CASE("ChernoffSeries: EqualRatesWithinTolerance") {
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK_NEAR(chernoff_s_series(RatePair(4.0, 4.0), s, 1e-14), 0.0, 1e-13);
  }
}

TEST_CASE("ChernoffSeries: MatchesClosedFormAtKennedyRates") {
  const RatePair p(0.01, 4.01);
  CHECK_NEAR(chernoff_s_series(p, 0.299, 1e-15), chernoff_s(p, 0.299), 1e-10);
}

TEST_CASE("ChernoffSeries: RejectsNonPositiveTolerance") {
  CHECK_THROWS_AS(chernoff_s_series(RatePair(1.0, 2.0), 0.5, 0.0),
               std::invalid_argument);
}

TEST_CASE("ChernoffSeries: OracleGrid") {
  const double rates[] = {0.01, 0.1, 1.0, 4.0, 10.0};
  for (double a : rates) {
    for (double b : rates) {
      for (int k = 1; k <= 9; ++k) {
        const double s = 0.1 * k;
        const RatePair p(a, b);
        INFO(a << " " << b << " " << s);
        CHECK_NEAR(chernoff_s(p, s), chernoff_s_series(p, s, 1e-16), 1e-10);
      }
    }
  }
}

TEST_CASE("MaxChernoff: TieConvention") {
  const auto opt = max_chernoff(RatePair(5.0, 5.0));
  CHECK_EQ(opt.s_star, 0.5);
  CHECK_EQ(opt.value, 0.0);
}

TEST_CASE("MaxChernoff: LowSnrPointMass") {
  const auto opt = max_chernoff(RatePair(0.0126334, 3.8073666));
  CHECK_NEAR(opt.s_star, kSqrt09SStar, 1e-9);
  CHECK_NEAR(opt.value, kSqrt09Value, 1e-12);
  CHECK_NEAR(opt.s_star, 0.31, 5e-3);
  CHECK_NEAR(opt.value, 1.9822, 2e-3);
}

TEST_CASE("MaxChernoff: KennedyStationarity") {
  const RatePair p(0.01, 4.01);
  const auto opt = max_chernoff(p);
  CHECK_NEAR(opt.s_star, kKennedySStar, 1e-9);
  CHECK_NEAR(opt.value, kKennedyValue, 1e-12);
  const double tilted = (4.01 - 0.01) / std::log(4.01 / 0.01);
  const double closed = opt.s_star * 0.01 + (1 - opt.s_star) * 4.01 - tilted;
  CHECK_NEAR(opt.value, closed, 1e-8);
  const double geo = std::pow(0.01, opt.s_star) * std::pow(4.01, 1 - opt.s_star);
  CHECK_NEAR(geo / tilted, 1.0, 1e-8);
}

TEST_CASE("MaxChernoff: DominatesSampledS") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logu(std::log(0.01), std::log(20.0));
  for (int i = 0; i < 50; ++i) {
    const RatePair p(std::exp(logu(rng)), std::exp(logu(rng)));
    const auto opt = max_chernoff(p);
    CHECK(opt.value == doctest::Approx(chernoff_s(p, opt.s_star)).epsilon(1e-15));
    for (int k = 0; k <= 100; ++k) {
      CHECK_GE(opt.value, chernoff_s(p, 0.01 * k) - 1e-14);
    }
  }
}

TEST_CASE("SStarRatio: Limits") {
  CHECK_NEAR(s_star_ratio(1.0 - 1e-12), 0.5, 1e-9);
  CHECK_NEAR(s_star_ratio(1.0 - 1e-6), 0.5, 1e-7);
  CHECK_LT(s_star_ratio(1e-300), 0.01);
  CHECK_GT(s_star_ratio(1e-300), 0.0);
}

TEST_CASE("SStarRatio: LowSnrPointMassRatio") {
  CHECK_NEAR(s_star_ratio(0.0033182), 0.306, 1e-3);
  const auto opt = max_chernoff(RatePair(0.0126334, 3.8073666));
  CHECK_NEAR(s_star_ratio(0.0126334 / 3.8073666), opt.s_star, 1e-9);
}

TEST_CASE("SStarRatio: RejectsOutsideUnitInterval") {
  CHECK_THROWS_AS(s_star_ratio(0.0), std::invalid_argument);
  CHECK_THROWS_AS(s_star_ratio(1.0), std::invalid_argument);
  CHECK_THROWS_AS(s_star_ratio(1.5), std::invalid_argument);
}

TEST_CASE("SStarRatio: StrictlyIncreasingInsideLowerHalf") {
  const int n = 10000;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = s_star_ratio((i + 0.5) / n);
    CHECK_GT(s, prev);
    CHECK_LT(s, 0.5);
    prev = s;
  }
}

TEST_CASE("SStarRatio: SmoothAcrossSeriesSwitch") {
  // The evaluation switches to a series at |log R| = 1e-4.
  const double below = s_star_ratio(std::exp(-1e-4 * (1 - 1e-9)));
  const double above = s_star_ratio(std::exp(-1e-4 * (1 + 1e-9)));
  CHECK_NEAR(below, above, 1e-12);
}

TEST_CASE("KlPoisson: ZeroOnEqualRates") { CHECK_EQ(kl_poisson(3.0, 3.0), 0.0); }

TEST_CASE("KlPoisson: MatchesSummation") {
  CHECK_NEAR(kl_poisson(2.0, 1.0), kKl21, 1e-14);
  CHECK_NEAR(kl_by_summation(2.0, 1.0), kKl21, 1e-12);
}

TEST_CASE("KlPoisson: RejectsNonPositive") {
  CHECK_THROWS_AS(kl_poisson(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kl_poisson(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("TiltedRate: Endpoints") {
  const RatePair p(0.3, 7.0);
  CHECK_EQ(tilted_rate(p, 1.0), 0.3);
  CHECK_EQ(tilted_rate(p, 0.0), 7.0);
}

TEST_CASE("TiltedRate: KennedyStationarity") {
  const RatePair p(0.01, 4.01);
  CHECK_NEAR(tilted_rate(p, max_chernoff(p).s_star), kKennedyTilted, 1e-10);
}

TEST_CASE("TiltedRate: KlIdentitiesOnRandomPairs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> logu(std::log(0.01), std::log(10.0));
  for (int i = 0; i < 100; ++i) {
    const RatePair p(std::exp(logu(rng)), std::exp(logu(rng)));
    if (p.degenerate()) continue;
    const auto opt = max_chernoff(p);
    const double t = tilted_rate(p, opt.s_star);
    CHECK_NEAR(kl_poisson(t, p.lambda0()), opt.value, 1e-9);
    CHECK_NEAR(kl_poisson(t, p.lambda1()), opt.value, 1e-9);
  }
}

TEST_CASE("ChernoffProperties: NonnegativeAndScaling") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(50.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = std::exp(logu(rng));
    const double b = std::exp(logu(rng));
    const double s = unit(rng);
    const double c = std::exp(logu(rng));
    const double base = chernoff_s(RatePair(a, b), s);
    CHECK_GE(base, 0.0);
    const double scaled = chernoff_s(RatePair(c * a, c * b), s);
    CHECK_NEAR(scaled, c * base, 1e-12 * c * base);
  }
}

TEST_CASE("ChernoffProperties: StrictlyConcaveInS") {
  const double rates[] = {0.01, 0.5, 4.01};
  for (double a : rates) {
    for (double b : rates) {
      if (a == b) continue;
      const RatePair p(a, b);
      for (int k = 1; k < 100; ++k) {
        const double s = 0.01 * k;
        const double d2 = chernoff_s(p, s + 0.01) - 2 * chernoff_s(p, s) +
                          chernoff_s(p, s - 0.01);
        INFO(a << " " << b << " " << s);
        CHECK_LT(d2, 0.0);
      }
    }
  }
}

}  // namespace
}  // namespace psk
