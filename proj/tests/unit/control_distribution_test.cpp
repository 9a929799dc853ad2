#include "psk/control_distribution.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "check_near.hpp"

namespace psk {
namespace {

TEST_CASE("ControlDistribution: weight validation") {
  CHECK_THROWS_AS(ControlDistribution({}), std::invalid_argument);
  CHECK_THROWS_AS(ControlDistribution({{0.0, 0.5}, {1.0, 0.4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ControlDistribution({{0.0, 1.2}, {1.0, -0.2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ControlDistribution({{0.0, 1.0}, {1.0, 0.0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(ControlDistribution({{0.0, 0.1}, {1.0, 0.9}}));
}

TEST_CASE("ControlDistribution: time sharing") {
  const auto ts = ControlDistribution::time_sharing(0.9);
  CHECK_EQ(ts.size(), 2u);
  CHECK_NEAR(ts.second_moment(), 0.9, 1e-15);
  CHECK_EQ(ControlDistribution::time_sharing(0.0).size(), 1u);
  CHECK_EQ(ControlDistribution::time_sharing(1.0).atoms()[0].point,
           Complex(1.0));
}

TEST_CASE("ControlDistribution: type of a sequence") {
  const std::vector<Complex> seq{1.0, 0.0, 1.0, 1.0};
  const auto t = ControlDistribution::type_of(seq);
  REQUIRE_EQ(t.size(), 2u);
  CHECK_EQ(t.atoms()[0].point, Complex(1.0));
  CHECK_NEAR(t.atoms()[0].weight, 0.75, 1e-16);
  CHECK_NEAR(t.second_moment(), 0.75, 1e-16);
  CHECK_THROWS_AS(ControlDistribution::type_of(std::vector<Complex>{}),
                  std::invalid_argument);
}

TEST_CASE("ControlDistribution: feasibility") {
  const OperatingRatios r(0.01, 1.0, 0.5);
  CHECK(ControlDistribution::time_sharing(0.5).feasible(r));
  CHECK_FALSE(ControlDistribution::time_sharing(0.6).feasible(r));
  CHECK_THROWS_AS(ControlDistribution::time_sharing(0.6).require_feasible(r),
                  InfeasibleError);
  const auto outside = ControlDistribution({{1.1, 0.1}, {0.0, 0.9}});
  CHECK_FALSE(outside.feasible(r));
  CHECK_THROWS_AS(outside.require_feasible(r), InfeasibleError);
  // Boundary points within the disk tolerance are accepted.
  CHECK(ControlDistribution({{1.0 + 1e-13, 0.2}, {0.0, 0.8}}).feasible(r));
}

TEST_CASE("ControlDistribution: transformed keeps weights and moment") {
  const auto q = ControlDistribution({{Complex(0.3, 0.4), 0.25}, {0.8, 0.75}});
  const auto t = q.transformed(Complex(0.0, 1.0));
  CHECK_NEAR(t.second_moment(), q.second_moment(), 1e-15);
  CHECK_NEAR(std::abs(t.atoms()[0].point - Complex(-0.4, 0.3)), 0.0, 1e-15);
  CHECK_EQ(t.atoms()[1].weight, 0.75);
}

TEST_CASE("total_variation: basic properties") {
  const auto a = ControlDistribution::time_sharing(0.5);
  const auto b = ControlDistribution::time_sharing(0.7);
  CHECK_NEAR(total_variation(a, a), 0.0, 1e-16);
  CHECK_NEAR(total_variation(a, b), 0.2, 1e-15);
  CHECK_NEAR(total_variation(a, b), total_variation(b, a), 1e-16);
  const auto far = ControlDistribution::point_mass(Complex(0.0, 1.0));
  CHECK_NEAR(total_variation(a, far), 1.0, 1e-16);
  const auto shifted = ControlDistribution({{0.9999, 0.5}, {0.0, 0.5}});
  CHECK_NEAR(total_variation(a, shifted), 0.5, 1e-16);
  CHECK_NEAR(total_variation(a, shifted, 1e-3), 0.0, 1e-16);
}

TEST_CASE("total_variation: triangle inequality on random laws") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> idx(0, 4);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  const Complex pts[] = {0.0, 0.5, 1.0, Complex(0, 1), -0.5};
  auto draw = [&] {
    std::vector<Atom> atoms;
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      atoms.push_back({pts[idx(rng)], w(rng)});
      total += atoms.back().weight;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      atoms[i].weight /= total;
      acc += atoms[i].weight;
    }
    atoms.back().weight = 1.0 - acc;
    return ControlDistribution(std::move(atoms));
  };
  for (int i = 0; i < 200; ++i) {
    const auto p = draw();
    const auto q = draw();
    const auto r = draw();
    const double pq = total_variation(p, q);
    CHECK_GE(pq, 0.0);
    CHECK_LE(pq, 1.0 + 1e-15);
    CHECK_LE(pq, total_variation(p, r) + total_variation(r, q) + 1e-14);
  }
}

}  // namespace
}  // namespace psk
