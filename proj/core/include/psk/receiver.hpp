#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psk/constellation.hpp"
#include "psk/control_distribution.hpp"

namespace psk {

// Counter-based generator: each (seed, hypothesis, trial) triple gets its own
// SplitMix64 stream, so results do not depend on how trials are scheduled.
class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t seed, std::uint64_t hypothesis, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

// Draw from Poi(rate). `exp_neg_rate` must be exp(-rate); callers cache it.
std::uint32_t sample_poisson(double rate, double exp_neg_rate, TrialRng& rng);

// Sequence of normalized displacements v_1..v_N applied slice by slice,
// together with the context needed to turn them into count rates.
class OpenLoopPolicy {
 public:
  // Validates |v_n| <= R_CA and (1/N) sum |v_n|^2 <= R_CE, both to 1e-12;
  // throws InfeasibleError. scale.slices is set to the sequence length.
  OpenLoopPolicy(std::vector<Complex> displacements, SignalScale scale,
                 PskConstellation constellation, OperatingRatios ratios);

  const std::vector<Complex>& displacements() const { return displacements_; }
  const SignalScale& scale() const { return scale_; }
  const PskConstellation& constellation() const { return constellation_; }
  const OperatingRatios& ratios() const { return ratios_; }
  std::size_t slices() const { return displacements_.size(); }
  std::size_t num_states() const { return constellation_.num_states(); }

  double mean_energy() const;
  // Per-slice mean count under hypothesis m.
  double rate(std::size_t slice, std::size_t m) const {
    return rates_[slice * num_states() + m];
  }
  double log_rate(std::size_t slice, std::size_t m) const {
    return log_rates_[slice * num_states() + m];
  }
  ControlDistribution type() const;

 private:
  std::vector<Complex> displacements_;
  SignalScale scale_;
  PskConstellation constellation_;
  OperatingRatios ratios_;
  std::vector<double> rates_;
  std::vector<double> log_rates_;
};

// Largest-remainder apportionment of N * weight, then energy repair: while the
// mean energy exceeds R_CE, one slot moves from the largest-|v| atom to the
// origin.
OpenLoopPolicy realize_policy(const ControlDistribution& q,
                              const SignalScale& scale,
                              const PskConstellation& constellation,
                              const OperatingRatios& ratios);

std::vector<std::uint32_t> sample_trial(const OpenLoopPolicy& policy,
                                        std::size_t true_m, TrialRng& rng);

// Maximum likelihood hypothesis; ties go to the smallest index.
std::size_t ml_decide(const OpenLoopPolicy& policy,
                      std::span<const std::uint32_t> counts);

struct MonteCarloReport {
  std::uint64_t trials_per_hypothesis = 0;
  std::vector<std::uint64_t> errors;
  double p_e = 0.0;
  double stderr_p_e = 0.0;
  std::uint64_t seed = 0;
};

// Uniform-prior error rate of the ML receiver. Bit-identical for a fixed seed
// regardless of `workers` (0 picks hardware concurrency).
MonteCarloReport monte_carlo(const OpenLoopPolicy& policy,
                             std::uint64_t trials_per_hypothesis,
                             std::uint64_t seed, unsigned workers = 0);

struct ExactError {
  double p_e = 0.0;
  // Union bound on the per-hypothesis probability of a count above y_max.
  double tail_bound = 0.0;
  bool truncation_adequate = true;
};

// Exact Bayesian error of the ML receiver by enumerating {0..y_max}^N. The
// error is conditioned on the enumerated region; the neglected mass is
// reported in tail_bound (flagged inadequate above 1e-9).
ExactError exact_error_small(const OpenLoopPolicy& policy, std::uint32_t y_max);

// Smallest y_max whose per-slice tail mass is below `tail` for every slice
// and hypothesis.
std::uint32_t suggest_truncation(const OpenLoopPolicy& policy,
                                 double tail = 1e-13);

}  // namespace psk
