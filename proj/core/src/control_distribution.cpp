#include "psk/control_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace psk {

ControlDistribution::ControlDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw std::invalid_argument("control distribution needs at least one atom");
  }
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("atom weights must be positive and finite");
    }
    if (!std::isfinite(a.point.real()) || !std::isfinite(a.point.imag())) {
      throw std::invalid_argument("atom points must be finite");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("atom weights sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

ControlDistribution ControlDistribution::point_mass(Complex v) {
  return ControlDistribution({{v, 1.0}});
}

ControlDistribution ControlDistribution::time_sharing(double r_ce,
                                                      Complex kennedy) {
  const double w = r_ce / std::norm(kennedy);
  if (w <= 0.0) return point_mass(0.0);
  if (w >= 1.0) return point_mass(kennedy);
  return ControlDistribution({{kennedy, w}, {0.0, 1.0 - w}});
}

ControlDistribution ControlDistribution::type_of(
    std::span<const Complex> sequence) {
  if (sequence.empty()) {
    throw std::invalid_argument("type of an empty sequence is undefined");
  }
  std::vector<Complex> points;
  std::vector<std::size_t> counts;
  for (const auto& v : sequence) {
    auto it = std::find(points.begin(), points.end(), v);
    if (it == points.end()) {
      points.push_back(v);
      counts.push_back(1);
    } else {
      ++counts[static_cast<std::size_t>(it - points.begin())];
    }
  }
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  const double n = static_cast<double>(sequence.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    atoms.push_back({points[i], static_cast<double>(counts[i]) / n});
  }
  return ControlDistribution(std::move(atoms));
}

double ControlDistribution::second_moment() const {
  double m2 = 0.0;
  for (const auto& a : atoms_) m2 += a.weight * std::norm(a.point);
  return m2;
}

double ControlDistribution::max_amplitude() const {
  double r = 0.0;
  for (const auto& a : atoms_) r = std::max(r, std::abs(a.point));
  return r;
}

bool ControlDistribution::feasible(const OperatingRatios& ratios) const {
  return max_amplitude() <= ratios.r_ca() + kDiskTolerance &&
         second_moment() <= ratios.r_ce() + 1e-9;
}

void ControlDistribution::require_feasible(
    const OperatingRatios& ratios) const {
  if (max_amplitude() > ratios.r_ca() + kDiskTolerance) {
    throw InfeasibleError("control distribution leaves the disk of radius " +
                          std::to_string(ratios.r_ca()));
  }
  if (second_moment() > ratios.r_ce() + 1e-9) {
    throw InfeasibleError("control distribution second moment " +
                          std::to_string(second_moment()) +
                          " exceeds R_CE = " + std::to_string(ratios.r_ce()));
  }
}

ControlDistribution ControlDistribution::transformed(Complex factor) const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.point *= factor;
  return ControlDistribution(std::move(atoms));
}

double total_variation(const ControlDistribution& p,
                       const ControlDistribution& q, double merge_tol) {
  struct Entry {
    Complex point;
    double p = 0.0;
    double q = 0.0;
  };
  std::vector<Entry> entries;
  auto add = [&](Complex v, double wp, double wq) {
    for (auto& e : entries) {
      if (std::abs(e.point - v) <= merge_tol) {
        e.p += wp;
        e.q += wq;
        return;
      }
    }
    entries.push_back({v, wp, wq});
  };
  for (const auto& a : p.atoms()) add(a.point, a.weight, 0.0);
  for (const auto& a : q.atoms()) add(a.point, 0.0, a.weight);
  double tv = 0.0;
  for (const auto& e : entries) tv += std::abs(e.p - e.q);
  return 0.5 * tv;
}

}  // namespace psk
