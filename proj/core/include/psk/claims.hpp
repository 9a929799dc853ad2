#pragma once

#include <string>
#include <vector>

#include "psk/constellation.hpp"

namespace psk {

struct ClaimCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ClaimReport {
  std::vector<ClaimCheck> checks;
  std::vector<std::string> notes;

  bool all_passed() const;
};

// Reference values the structural checks compare against.
struct ClaimExpectations {
  // Exponent of the point mass at sqrt(R_CE) in the low-SNR regime.
  double low_snr_point_mass_beta = 1.9822;
  double low_snr_beta_slack = 1e-3;
  // Required gain of the optimizer over 0/Kennedy time-sharing.
  double min_gain_over_time_sharing = 0.04;
  double time_sharing_tv = 1e-2;
  // Atoms closer than the optimizer's displacement resolution are the same
  // support point when comparing against time-sharing.
  double support_merge_tol = 1e-3;
};

// Structural checks on BPSK exponent-optimal policies:
//   1. convexity certificate g_{s,0}(v) > 0 on the (s, v) grid
//   2. maximizing s lies in (0, 1/2] for non-degenerate control laws
//   3. low SNR: the optimizer beats 0/Kennedy time-sharing
//   4. high SNR: the optimizer returns 0/Kennedy time-sharing
// Failures are reported in the result, never thrown.
ClaimReport verify_claims(const OperatingRatios& ratios_high,
                          const OperatingRatios& ratios_low,
                          const ClaimExpectations& expect = {});

}  // namespace psk
