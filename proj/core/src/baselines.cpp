#include "psk/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psk/control_distribution.hpp"
#include "psk/exponent.hpp"

namespace psk {
namespace {

void check_photons(double n_s) {
  if (!(n_s >= 0.0)) throw std::invalid_argument("n_s must be >= 0");
}

template <typename F>
BaselineCurve tabulate(std::string label, std::span<const double> grid, F&& f) {
  BaselineCurve curve{std::move(label), {}};
  curve.points.reserve(grid.size());
  for (double x : grid) curve.points.push_back({x, f(x)});
  return curve;
}

}  // namespace

double helstrom_binary(double n_s) {
  check_photons(n_s);
  // 1 - sqrt(1 - e) = e / (1 + sqrt(1 - e)) avoids cancellation for large n_s.
  const double overlap = std::exp(-4.0 * n_s);
  return 0.5 * overlap / (1.0 + std::sqrt(1.0 - overlap));
}

double homodyne_binary(double n_s) {
  check_photons(n_s);
  return 0.5 * std::erfc(std::sqrt(2.0 * n_s));
}

double theorem_bound(double beta, double n_s, int num_states,
                     bool binary_prefactor) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  check_photons(n_s);
  if (num_states < 2) throw std::invalid_argument("need at least two states");
  if (binary_prefactor && num_states != 2) {
    throw std::invalid_argument("the 1/2 prefactor only applies to two states");
  }
  const double prefactor = binary_prefactor ? 0.5 : num_states - 1.0;
  return std::min(1.0, prefactor * std::exp(-n_s * beta));
}

double fixed_displacement_exponent(Complex v,
                                   const PskConstellation& constellation,
                                   const OperatingRatios& ratios) {
  if (std::abs(v) > ratios.r_ca() + kDiskTolerance) {
    throw InfeasibleError("|v| exceeds R_CA");
  }
  if (std::norm(v) > ratios.r_ce() + 1e-12) {
    throw InfeasibleError("|v|^2 exceeds R_CE");
  }
  return exponent_of(ControlDistribution::point_mass(v), constellation, ratios);
}

BaselineCurve helstrom_curve(std::span<const double> n_s_grid) {
  return tabulate("helstrom", n_s_grid, helstrom_binary);
}

BaselineCurve homodyne_curve(std::span<const double> n_s_grid) {
  return tabulate("homodyne", n_s_grid, homodyne_binary);
}

BaselineCurve theorem_curve(double beta, std::span<const double> n_s_grid,
                            int num_states, bool binary_prefactor) {
  return tabulate("bound_ours", n_s_grid, [&](double n_s) {
    return theorem_bound(beta, n_s, num_states, binary_prefactor);
  });
}

}  // namespace psk
