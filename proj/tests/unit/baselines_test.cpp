#include "psk/baselines.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "check_near.hpp"

namespace psk {
namespace {

// 30-digit mpmath: (1 - sqrt(1 - e^-8))/2 and erfc(2)/2.
constexpr double kHelstrom2 = 8.387269160402486e-5;
constexpr double kHomodyne2 = 2.338867490523632919e-3;
// 1/2 exp(-2 * 1.9822).
constexpr double kBound2 = 0.0094897104246634;

// Test-side oracle: Gaussian tail P[Z > sqrt(4 n_s)] by Simpson integration.
double gaussian_tail(double x) {
  const double hi = x + 12.0;
  const int steps = 20000;
  const double h = (hi - x) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = x + i * h;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * std::exp(-0.5 * t * t);
  }
  return acc * h / 3.0 / std::sqrt(2.0 * 3.14159265358979323846);
}

TEST_CASE("helstrom_binary: values") {
  CHECK_EQ(helstrom_binary(0.0), 0.5);
  CHECK_NEAR(helstrom_binary(2.0) / kHelstrom2, 1.0, 1e-12);
  CHECK_NEAR(helstrom_binary(2.0) / (std::exp(-8.0) / 4.0), 1.0, 1e-3);
  CHECK_GT(helstrom_binary(50.0), 0.0);
  CHECK_LT(helstrom_binary(50.0), 1e-80);
  CHECK_THROWS_AS(helstrom_binary(-1.0), std::invalid_argument);
}

TEST_CASE("homodyne_binary: values") {
  CHECK_EQ(homodyne_binary(0.0), 0.5);
  CHECK_NEAR(homodyne_binary(2.0) / kHomodyne2, 1.0, 1e-12);
  CHECK_NEAR(gaussian_tail(std::sqrt(8.0)) / kHomodyne2, 1.0, 1e-8);
  CHECK_LT(homodyne_binary(200.0), 1e-150);
  CHECK_THROWS_AS(homodyne_binary(-0.1), std::invalid_argument);
}

TEST_CASE("baselines: ordering and monotonicity") {
  double prev_hel = 0.5;
  double prev_hom = 0.5;
  for (int i = 1; i <= 100; ++i) {
    const double n = 0.1 * i;
    const double hel = helstrom_binary(n);
    const double hom = homodyne_binary(n);
    CHECK_LT(hel, hom);
    CHECK_LE(hel, prev_hel);
    CHECK_LE(hom, prev_hom);
    CHECK_GE(hel, 0.0);
    CHECK_LE(hom, 0.5);
    prev_hel = hel;
    prev_hom = hom;
  }
}

TEST_CASE("theorem_bound: values") {
  CHECK_EQ(theorem_bound(0.0, 3.0, 2, true), 0.5);
  CHECK_EQ(theorem_bound(0.0, 3.0, 4, false), 1.0);
  CHECK_NEAR(theorem_bound(1.9822, 2.0, 2, true), kBound2, 1e-16);
  const double single = theorem_bound(0.7, 1.5, 2, true) / 0.5;
  const double doubled = theorem_bound(0.7, 3.0, 2, true) / 0.5;
  CHECK_NEAR(doubled, single * single, 1e-15);
  CHECK_NEAR(theorem_bound(2.0, 1.0, 4, false), 3.0 * std::exp(-2.0), 1e-15);
  CHECK_EQ(theorem_bound(1.0, 1.0, 4, false), 1.0);
  CHECK_THROWS_AS(theorem_bound(1.0, 1.0, 4, true), std::invalid_argument);
  CHECK_THROWS_AS(theorem_bound(-1.0, 1.0, 2, true), std::invalid_argument);
  CHECK_THROWS_AS(theorem_bound(1.0, 1.0, 1, false), std::invalid_argument);
}

TEST_CASE("fixed_displacement_exponent: examples") {
  const auto bpsk = PskConstellation::bpsk();
  const OperatingRatios r(0.01, 1.0, 1.0);
  CHECK_EQ(fixed_displacement_exponent(0.0, bpsk, r), 0.0);
  CHECK_NEAR(fixed_displacement_exponent(1.0, bpsk, r), 2.1460, 1e-4);
  CHECK_NEAR(fixed_displacement_exponent(std::sqrt(0.9), bpsk, r), 1.9822, 2e-3);
  CHECK_THROWS_AS(fixed_displacement_exponent(1.0, bpsk, r.with_r_ce(0.9)),
                  InfeasibleError);
  CHECK_THROWS_AS(
      fixed_displacement_exponent(1.2, bpsk, OperatingRatios(0.01, 1.0, 1.0)),
      InfeasibleError);
}

TEST_CASE("curves: labels and grid") {
  const std::vector<double> grid{0.25, 0.5, 1.0};
  const auto hel = helstrom_curve(grid);
  const auto hom = homodyne_curve(grid);
  const auto bound = theorem_curve(2.0, grid, 2, true);
  CHECK_EQ(hel.label, "helstrom");
  CHECK_EQ(hom.label, "homodyne");
  CHECK_EQ(bound.label, "bound_ours");
  REQUIRE_EQ(bound.points.size(), 3u);
  CHECK_EQ(bound.points[2].x, 1.0);
  CHECK_EQ(bound.points[2].p_e, 0.5 * std::exp(-2.0));
  CHECK_EQ(hom.points[1].p_e, homodyne_binary(0.5));
}

}  // namespace
}  // namespace psk
