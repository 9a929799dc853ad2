#pragma once

#include <span>
#include <vector>

#include "psk/constellation.hpp"

namespace psk {

struct Atom {
  Complex point;
  double weight = 0.0;
};

// Finitely supported distribution of normalized displacements. Also used for
// the empirical type of a realized control sequence.
class ControlDistribution {
 public:
  // Weights must be positive and sum to one within 1e-12; throws
  // std::invalid_argument otherwise.
  explicit ControlDistribution(std::vector<Atom> atoms);

  static ControlDistribution point_mass(Complex v);
  // R_CE * delta_{kennedy} + (1 - R_CE) * delta_0, clamped to a point mass
  // at either end.
  static ControlDistribution time_sharing(double r_ce, Complex kennedy = 1.0);
  // Empirical distribution of a sequence; identical points are merged and
  // listed in order of first appearance.
  static ControlDistribution type_of(std::span<const Complex> sequence);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  double second_moment() const;
  double max_amplitude() const;

  bool feasible(const OperatingRatios& ratios) const;
  // Throws InfeasibleError naming the violated constraint.
  void require_feasible(const OperatingRatios& ratios) const;

  // Same atoms with every point multiplied by `factor`.
  ControlDistribution transformed(Complex factor) const;

 private:
  std::vector<Atom> atoms_;
};

// Total variation distance; atoms closer than `merge_tol` count as one point.
double total_variation(const ControlDistribution& p,
                       const ControlDistribution& q, double merge_tol = 1e-9);

}  // namespace psk
