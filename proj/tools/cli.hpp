#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psk/claims.hpp"
#include "psk/constellation.hpp"
#include "psk/exponent.hpp"

namespace psk::cli {

enum ExitCode : int {
  kSuccess = 0,
  kArgumentError = 1,
  kInfeasible = 2,
  kVerificationFailed = 3,
};

inline constexpr int kSchemaVersion = 1;

// Parsed command line. Ratio feasibility is enforced when `ratios()` is
// built, so an infeasible budget surfaces as InfeasibleError (exit code 2).
struct RunConfig {
  std::string command;
  std::optional<double> r_sn;
  std::optional<double> snr;
  double r_ca = 1.0;
  double r_ce = 1.0;
  double alpha_sq = 2.0;
  int psk = 2;
  std::vector<double> phases;
  int grid_k = 20;
  int slices = 200;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string format;
  std::string grid;
  bool force_zero = false;
  double expect_low_snr_beta = 1.9822;

  OperatingRatios ratios() const;
  PskConstellation constellation() const;
  bool is_bpsk() const { return phases.empty() && psk == 2; }
};

// "start:stop:step" inclusive of stop (to within step/1e6).
std::vector<double> parse_grid(const std::string& text);

// Binary optimizer for the standard BPSK constellation, coordinate ascent on
// the control grid otherwise.
ExponentSolution solve(const RunConfig& config, const OperatingRatios& ratios);

std::string cmd_exponent(const RunConfig& config);
std::string cmd_sweep_photon(const RunConfig& config);
std::string cmd_sweep_energy(const RunConfig& config);
std::string cmd_simulate(const RunConfig& config);
// Sets `passed` to whether every claim check passed.
std::string cmd_verify(const RunConfig& config, bool& passed);

// Full entry point: parses args (args[0] is the program name), dispatches,
// writes to `out` or the --out file, maps failures to ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace psk::cli
