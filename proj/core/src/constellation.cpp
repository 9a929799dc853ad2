#include "psk/constellation.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace psk {
namespace {

double wrap_phase(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

void check_disk(Complex v, const OperatingRatios& ratios) {
  if (std::abs(v) > ratios.r_ca() + kDiskTolerance) {
    throw InfeasibleError("displacement |v| = " + std::to_string(std::abs(v)) +
                          " exceeds peak ratio R_CA = " +
                          std::to_string(ratios.r_ca()));
  }
}

}  // namespace

OperatingRatios::OperatingRatios(double r_sn, double r_ca, double r_ce)
    : r_sn_(r_sn), r_ca_(r_ca), r_ce_(r_ce) {
  if (!(r_sn > 0.0) || !std::isfinite(r_sn)) {
    throw std::invalid_argument("r_sn must be finite and positive");
  }
  if (!(r_ca > 0.0) || !std::isfinite(r_ca)) {
    throw std::invalid_argument("R_CA must be finite and positive");
  }
  if (!(r_ce >= 0.0) || !std::isfinite(r_ce)) {
    throw std::invalid_argument("R_CE must be finite and non-negative");
  }
  if (r_ce > r_ca * r_ca) {
    throw InfeasibleError("R_CE = " + std::to_string(r_ce) +
                          " exceeds R_CA^2 = " + std::to_string(r_ca * r_ca));
  }
}

OperatingRatios OperatingRatios::from_snr(double snr, double r_ca,
                                          double r_ce) {
  if (!(snr > 0.0)) throw std::invalid_argument("SNR must be positive");
  return {1.0 / snr, r_ca, r_ce};
}

PskConstellation::PskConstellation(std::vector<double> phases)
    : phases_(std::move(phases)) {
  if (phases_.size() < 2) {
    throw std::invalid_argument("a constellation needs at least two states");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    if (!std::isfinite(phases_[i])) {
      throw std::invalid_argument("phases must be finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double d = wrap_phase(phases_[i] - phases_[j]);
      if (d < 1e-12 || two_pi - d < 1e-12) {
        throw std::invalid_argument("phases must be distinct modulo 2 pi");
      }
    }
  }
}

PskConstellation PskConstellation::bpsk() {
  return PskConstellation({std::numbers::pi, 0.0});
}

PskConstellation PskConstellation::uniform_psk(int num_states) {
  if (num_states < 2) {
    throw std::invalid_argument("uniform_psk requires M >= 2");
  }
  std::vector<double> phases(static_cast<std::size_t>(num_states));
  for (int m = 0; m < num_states; ++m) {
    phases[static_cast<std::size_t>(m)] = 2.0 * std::numbers::pi * m / num_states;
  }
  return PskConstellation(std::move(phases));
}

void SignalScale::validate() const {
  if (!(alpha_sq > 0.0) || !std::isfinite(alpha_sq)) {
    throw std::invalid_argument("alpha^2 must be finite and positive");
  }
  if (slices < 1) throw std::invalid_argument("slice count N must be >= 1");
  if (grid_k < 1) throw std::invalid_argument("grid fineness K must be >= 1");
}

double normalized_rate(Complex v, std::size_t m,
                       const PskConstellation& constellation,
                       const OperatingRatios& ratios) {
  check_disk(v, ratios);
  return std::norm(v + constellation.unit_signal(m)) + ratios.r_sn();
}

double physical_rate(Complex u, std::size_t m, const SignalScale& scale,
                     const PskConstellation& constellation,
                     const OperatingRatios& ratios) {
  scale.validate();
  const double alpha = std::sqrt(scale.alpha_sq);
  return scale.alpha_sq / scale.slices *
         normalized_rate(u / alpha, m, constellation, ratios);
}

std::vector<Complex> control_grid(int grid_k, const OperatingRatios& ratios) {
  if (grid_k < 1) throw std::invalid_argument("grid fineness K must be >= 1");
  std::vector<Complex> points;
  points.reserve(static_cast<std::size_t>(grid_k) * grid_k + 1);
  points.emplace_back(0.0, 0.0);
  for (int k = 1; k <= grid_k; ++k) {
    const double rho = ratios.r_ca() * k / grid_k;
    for (int j = 0; j < grid_k; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / grid_k;
      double re = rho * std::cos(theta);
      double im = rho * std::sin(theta);
      // Snap rounding residue so axis points are exactly on the axes.
      if (std::abs(re) < 1e-15 * rho) re = 0.0;
      if (std::abs(im) < 1e-15 * rho) im = 0.0;
      points.emplace_back(re, im);
    }
  }
  return points;
}

}  // namespace psk
