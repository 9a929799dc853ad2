#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace psk {

using Complex = std::complex<double>;

// Tolerance for |v| <= R_CA; grid points on the outer ring sit exactly on
// the boundary.
inline constexpr double kDiskTolerance = 1e-12;

// Raised when the control constraints cannot be met: an energy budget above
// the peak amplitude squared, a displacement outside the disk, a second
// moment over budget.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Dimensionless knobs shared by every computation.
//   r_sn: dark count rate over signal mean photon number (1 / SNR)
//   r_ca: peak displacement amplitude, in units of alpha
//   r_ce: average displacement energy, in units of alpha^2
class OperatingRatios {
 public:
  // Throws std::invalid_argument for non-positive r_sn / r_ca or negative
  // r_ce, InfeasibleError for r_ce > r_ca^2.
  OperatingRatios(double r_sn, double r_ca, double r_ce);

  static OperatingRatios from_snr(double snr, double r_ca, double r_ce);

  double r_sn() const { return r_sn_; }
  double r_ca() const { return r_ca_; }
  double r_ce() const { return r_ce_; }

  OperatingRatios with_r_ce(double r_ce) const {
    return {r_sn_, r_ca_, r_ce};
  }

 private:
  double r_sn_;
  double r_ca_;
  double r_ce_;
};

// Hypothesis set of phase-shift-keyed coherent states |alpha e^{i phi_m}>,
// uniform prior implied.
class PskConstellation {
 public:
  explicit PskConstellation(std::vector<double> phases);

  // H0: |-alpha>, H1: |alpha>.
  static PskConstellation bpsk();
  // phi_m = 2 pi m / M.
  static PskConstellation uniform_psk(int num_states);

  std::size_t num_states() const { return phases_.size(); }
  double phase(std::size_t m) const { return phases_.at(m); }
  const std::vector<double>& phases() const { return phases_; }
  Complex unit_signal(std::size_t m) const { return std::polar(1.0, phase(m)); }

 private:
  std::vector<double> phases_;
};

struct SignalScale {
  double alpha_sq = 1.0;  // mean photon number n_s
  int slices = 1;         // N; slice width 1/N with T = 1
  int grid_k = 20;        // control grid fineness K

  void validate() const;
  // lambda_d = alpha^2 * r_sn; never stored.
  double dark_rate(const OperatingRatios& ratios) const {
    return alpha_sq * ratios.r_sn();
  }
};

// Lambda_m(v) = |v + e^{i phi_m}|^2 + r_sn for a normalized displacement v.
double normalized_rate(Complex v, std::size_t m,
                       const PskConstellation& constellation,
                       const OperatingRatios& ratios);

// Per-slice mean count (alpha^2 / N) * Lambda_m(u / alpha) for a displacement
// u in amplitude units.
double physical_rate(Complex u, std::size_t m, const SignalScale& scale,
                     const PskConstellation& constellation,
                     const OperatingRatios& ratios);

// R_CA * { rho e^{i theta} : rho in {0, 1/K, ..., 1}, theta in {0, 2pi/K, ...} }
// with the origin listed once, first. K^2 + 1 points.
std::vector<Complex> control_grid(int grid_k, const OperatingRatios& ratios);

}  // namespace psk
