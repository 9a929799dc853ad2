#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "psk/constellation.hpp"
#include "psk/control_distribution.hpp"
#include "psk/divergence.hpp"

namespace psk {

struct HypothesisPair {
  std::size_t ell = 0;
  std::size_t m = 1;
};

struct PairExponent {
  HypothesisPair pair;
  double s_star = 0.5;
  double value = 0.0;
};

enum class SolutionMethod { kBinaryExactGrid, kGeneralCoordinateAscent };

std::string_view to_string(SolutionMethod method);

struct SolverDiagnostics {
  int iterations = 0;
  bool converged = true;
};

// Open-loop exponent (per unit mean photon number) achieved by q_star.
// `certified` means beta is a valid achievability lower bound.
struct ExponentSolution {
  double beta = 0.0;
  ControlDistribution q_star = ControlDistribution::point_mass(0.0);
  std::vector<PairExponent> per_pair;
  SolutionMethod method = SolutionMethod::kBinaryExactGrid;
  bool certified = false;
  SolverDiagnostics diagnostics;
};

// All unordered hypothesis pairs ell < m in lexicographic order.
std::vector<HypothesisPair> hypothesis_pairs(std::size_t num_states);

// max_s E_{V~q}[C_s(P_ell^V || P_m^V)]. Returns (1/2, 0) when every atom gives
// identical rates under the two hypotheses.
PairExponent pair_exponent(const ControlDistribution& q, HypothesisPair pair,
                           const PskConstellation& constellation,
                           const OperatingRatios& ratios);

// Per-pair exponents of q for all pairs, in hypothesis_pairs order.
std::vector<PairExponent> pair_exponents(const ControlDistribution& q,
                                         const PskConstellation& constellation,
                                         const OperatingRatios& ratios);

// min over pairs of pair_exponent(q, pair).value.
double exponent_of(const ControlDistribution& q,
                   const PskConstellation& constellation,
                   const OperatingRatios& ratios);

struct BinaryOptions {
  // Spacing of the real displacement grid on [0, R_CA].
  double resolution = 1e-3;
  // Coarse s grid spacing; refined by golden section around the best node.
  double s_step = 0.01;
  bool polish = true;
};

// BPSK (H0: |-alpha>, H1: |alpha>). For fixed s the objective is linear in Q
// under one moment constraint, so an optimal Q has at most two atoms; the
// search covers every one- and two-point support on the real grid via the
// upper concave envelope of s-divergence against energy.
ExponentSolution optimize_binary(const OperatingRatios& ratios,
                                 const BinaryOptions& options = {});

struct GeneralOptions {
  int grid_k = 20;
  int max_iterations = 200;
  double tolerance = 1e-9;
};

// Coordinate ascent over distributions on the control grid: fix per-pair s,
// solve the max-min linear program, recompute s. Every iterate is feasible,
// so the result is a certified lower bound, not a proven optimum for M > 2.
ExponentSolution optimize_general(const PskConstellation& constellation,
                                  const OperatingRatios& ratios,
                                  const GeneralOptions& options = {});

// Convexity certificate g_{s,r}(v) for the BPSK s-divergence against energy
// E = v^2 on v in (0,1). At r = 0 it reduces to
//   4s(1-2s)v + (1-v)^{2(1-s)} [(1+v)^{2s} - (1-v)^{2s}].
double convexity_margin(double s, double r, double v);

}  // namespace psk
