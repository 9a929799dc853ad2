#pragma once

#include <span>
#include <string>
#include <vector>

#include "psk/constellation.hpp"

namespace psk {

struct CurvePoint {
  double x = 0.0;
  double p_e = 0.0;
};

struct BaselineCurve {
  std::string label;
  std::vector<CurvePoint> points;
};

// Minimum error for |+alpha> vs |-alpha> with equal priors, no dark counts:
// (1 - sqrt(1 - exp(-4 n_s))) / 2.
double helstrom_binary(double n_s);

// Shot-noise-limited homodyne decision between +/- alpha quadratures:
// erfc(sqrt(2 n_s)) / 2.
double homodyne_binary(double n_s);

// min(1, prefactor * exp(-n_s * beta)); prefactor 1/2 when binary_prefactor
// (only valid for two states), otherwise M - 1.
double theorem_bound(double beta, double n_s, int num_states,
                     bool binary_prefactor);

// Exponent of the single-point control law delta_v.
double fixed_displacement_exponent(Complex v,
                                   const PskConstellation& constellation,
                                   const OperatingRatios& ratios);

BaselineCurve helstrom_curve(std::span<const double> n_s_grid);
BaselineCurve homodyne_curve(std::span<const double> n_s_grid);
BaselineCurve theorem_curve(double beta, std::span<const double> n_s_grid,
                            int num_states, bool binary_prefactor);

}  // namespace psk
