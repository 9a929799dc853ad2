#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "psk/exponent.hpp"
#include "psk/scalar_search.hpp"

namespace psk {
namespace {

constexpr double kTieTolerance = 1e-10;

// BPSK s-divergence at a real displacement v: Lambda_0 = (v-1)^2 + r,
// Lambda_1 = (v+1)^2 + r.
double bpsk_chernoff(double v, double s, double r) {
  const double l0 = (v - 1.0) * (v - 1.0) + r;
  const double l1 = (v + 1.0) * (v + 1.0) + r;
  return chernoff_s(RatePair(l0, l1), s);
}

struct Curve {
  std::vector<double> v;
  std::vector<double> energy;
  std::vector<double> log_l0;
  std::vector<double> log_l1;
  std::vector<double> l0;
  std::vector<double> l1;
};

Curve build_curve(const OperatingRatios& ratios, double resolution) {
  const double r_ca = ratios.r_ca();
  const auto steps = static_cast<std::size_t>(std::ceil(r_ca / resolution));
  std::vector<double> vs;
  vs.reserve(steps + 2);
  for (std::size_t i = 0; i <= steps; ++i) {
    vs.push_back(std::min(r_ca, static_cast<double>(i) * resolution));
  }
  // The point that spends the budget exactly is always a candidate.
  const double v_budget = std::sqrt(ratios.r_ce());
  if (v_budget <= r_ca) vs.push_back(v_budget);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-15; }),
           vs.end());

  Curve c;
  for (double v : vs) {
    const double l0 = (v - 1.0) * (v - 1.0) + ratios.r_sn();
    const double l1 = (v + 1.0) * (v + 1.0) + ratios.r_sn();
    c.v.push_back(v);
    c.energy.push_back(v * v);
    c.l0.push_back(l0);
    c.l1.push_back(l1);
    c.log_l0.push_back(std::log(l0));
    c.log_l1.push_back(std::log(l1));
  }
  return c;
}

// One- or two-point support on the curve; lo == hi is a point mass.
struct Support {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double weight_hi = 0.0;
  double value = 0.0;
  double second_moment = 0.0;
};

// sup over distributions on the curve with E[v^2] <= budget of E[C_s]: the
// better of the best affordable point and the upper concave envelope of
// (v^2, C_s) evaluated at the budget.
Support best_support(const Curve& c, double s, double budget,
                     std::vector<double>& f, std::vector<std::size_t>& hull) {
  const std::size_t n = c.v.size();
  f.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.l0[i] == c.l1[i]) {
      f[i] = 0.0;
      continue;
    }
    const double geo = std::exp(s * c.log_l0[i] + (1.0 - s) * c.log_l1[i]);
    f[i] = std::max(0.0, s * c.l0[i] + (1.0 - s) * c.l1[i] - geo);
  }

  Support single;
  bool have_single = false;
  for (std::size_t i = 0; i < n && c.energy[i] <= budget + 1e-15; ++i) {
    if (!have_single || f[i] > single.value + kTieTolerance) {
      single = {i, i, 0.0, f[i], c.energy[i]};
      have_single = true;
    }
  }

  // Andrew's monotone chain, upper hull; energies are sorted ascending.
  hull.clear();
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (c.energy[b] - c.energy[a]) * (f[i] - f[a]) -
                           (f[b] - f[a]) * (c.energy[i] - c.energy[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  Support envelope = single;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const std::size_t a = hull[k];
    const std::size_t b = hull[k + 1];
    if (c.energy[a] <= budget && budget < c.energy[b]) {
      const double t = (budget - c.energy[a]) / (c.energy[b] - c.energy[a]);
      if (t <= 0.0) break;
      envelope = {a, b, t, (1.0 - t) * f[a] + t * f[b], budget};
      break;
    }
  }
  if (single.value >= envelope.value - kTieTolerance) return single;
  return envelope;
}

struct Candidate {
  double v_lo = 0.0;
  double v_hi = 0.0;
  double weight_hi = 0.0;  // 0 for a point mass at v_lo
  double s = 0.5;
  double value = 0.0;
};

double two_point_value(double v_lo, double v_hi, double s, double budget,
                       double r) {
  const double e_lo = v_lo * v_lo;
  const double e_hi = v_hi * v_hi;
  if (e_hi - e_lo < 1e-15) return bpsk_chernoff(v_hi, s, r);
  const double t = std::clamp((budget - e_lo) / (e_hi - e_lo), 0.0, 1.0);
  return (1.0 - t) * bpsk_chernoff(v_lo, s, r) + t * bpsk_chernoff(v_hi, s, r);
}

// Cyclic golden-section refinement of (v_lo, v_hi, s) in windows around the
// grid optimum, keeping v_lo^2 <= budget <= v_hi^2 so the weight stays pinned
// by the active moment constraint.
Candidate polish(Candidate cand, const OperatingRatios& ratios,
                 double resolution) {
  const double r = ratios.r_sn();
  const double budget = ratios.r_ce();
  const double v_budget = std::sqrt(budget);
  const double r_ca = ratios.r_ca();
  const double window = 2.0 * resolution;

  auto accept = [&](Candidate& c, const ScalarMaximum& m, double& field) {
    if (m.value > c.value) {
      field = m.x;
      c.value = m.value;
      return true;
    }
    return false;
  };

  if (cand.weight_hi == 0.0) {
    // Point mass: the s-maximum is closed form, only v moves.
    auto value = [&](double v) {
      const double l0 = (v - 1.0) * (v - 1.0) + r;
      const double l1 = (v + 1.0) * (v + 1.0) + r;
      return max_chernoff(RatePair(l0, l1)).value;
    };
    const double lo = std::max(0.0, cand.v_lo - window);
    const double hi = std::min({r_ca, v_budget, cand.v_lo + window});
    if (hi > lo) {
      const auto m = golden_section_maximize(value, lo, hi, 1e-12);
      accept(cand, m, cand.v_lo);
    }
    cand.s = max_chernoff(RatePair((cand.v_lo - 1.0) * (cand.v_lo - 1.0) + r,
                                   (cand.v_lo + 1.0) * (cand.v_lo + 1.0) + r))
                 .s_star;
    cand.v_hi = cand.v_lo;
    return cand;
  }

  for (int round = 0; round < 25; ++round) {
    const double before = cand.value;
    {
      const double lo = std::max(0.0, cand.v_lo - window);
      const double hi = std::min(v_budget, cand.v_lo + window);
      if (hi > lo) {
        auto f = [&](double x) {
          return two_point_value(x, cand.v_hi, cand.s, budget, r);
        };
        accept(cand, golden_section_maximize(f, lo, hi, 1e-12), cand.v_lo);
      }
    }
    {
      const double lo = std::max(v_budget, cand.v_hi - window);
      const double hi = std::min(r_ca, cand.v_hi + window);
      if (hi > lo) {
        auto f = [&](double x) {
          return two_point_value(cand.v_lo, x, cand.s, budget, r);
        };
        accept(cand, golden_section_maximize(f, lo, hi, 1e-12), cand.v_hi);
      }
    }
    {
      const double lo = std::max(0.0, cand.s - 0.01);
      const double hi = std::min(1.0, cand.s + 0.01);
      auto f = [&](double s) {
        return two_point_value(cand.v_lo, cand.v_hi, s, budget, r);
      };
      accept(cand, golden_section_maximize(f, lo, hi, 1e-13), cand.s);
    }
    if (cand.value - before < 1e-14) break;
  }
  const double e_lo = cand.v_lo * cand.v_lo;
  const double e_hi = cand.v_hi * cand.v_hi;
  cand.weight_hi = e_hi - e_lo < 1e-15
                       ? 1.0
                       : std::clamp((budget - e_lo) / (e_hi - e_lo), 0.0, 1.0);
  return cand;
}

ControlDistribution to_distribution(const Candidate& c) {
  if (c.weight_hi <= 0.0) return ControlDistribution::point_mass(c.v_lo);
  if (c.weight_hi >= 1.0 || c.v_lo == c.v_hi) {
    return ControlDistribution::point_mass(c.v_hi);
  }
  return ControlDistribution({{c.v_lo, 1.0 - c.weight_hi}, {c.v_hi, c.weight_hi}});
}

}  // namespace

ExponentSolution optimize_binary(const OperatingRatios& ratios,
                                 const BinaryOptions& options) {
  if (!(options.resolution > 0.0) || !(options.s_step > 0.0) ||
      options.s_step > 1.0) {
    throw std::invalid_argument("optimize_binary: bad grid options");
  }
  const auto constellation = PskConstellation::bpsk();
  const Curve curve = build_curve(ratios, options.resolution);
  const double budget = ratios.r_ce();

  std::vector<double> f_buf;
  std::vector<std::size_t> hull_buf;
  auto phi = [&](double s) {
    return best_support(curve, s, budget, f_buf, hull_buf);
  };

  const auto s_nodes = static_cast<int>(std::lround(1.0 / options.s_step));
  double best_s = 0.5;
  Support best = phi(best_s);
  for (int j = 0; j <= s_nodes; ++j) {
    const double s = std::min(1.0, j * options.s_step);
    const Support cand = phi(s);
    if (cand.value > best.value + kTieTolerance) {
      best = cand;
      best_s = s;
    }
  }
  {
    const double lo = std::max(0.0, best_s - options.s_step);
    const double hi = std::min(1.0, best_s + options.s_step);
    const auto refined = golden_section_maximize(
        [&](double s) { return phi(s).value; }, lo, hi, 1e-9);
    if (refined.value > best.value + kTieTolerance) {
      best_s = refined.x;
      best = phi(best_s);
    }
  }

  Candidate grid_cand{curve.v[best.lo], curve.v[best.hi], best.weight_hi,
                      best_s, best.value};
  if (best.lo == best.hi) grid_cand.weight_hi = 0.0;

  int iterations = s_nodes + 1;
  ControlDistribution q = to_distribution(grid_cand);
  auto per_pair = pair_exponents(q, constellation, ratios);
  if (options.polish && budget > 0.0) {
    const Candidate refined = polish(grid_cand, ratios, options.resolution);
    const ControlDistribution q_refined = to_distribution(refined);
    auto refined_pairs = pair_exponents(q_refined, constellation, ratios);
    if (q_refined.feasible(ratios) &&
        refined_pairs[0].value > per_pair[0].value + kTieTolerance) {
      q = q_refined;
      per_pair = std::move(refined_pairs);
    }
    ++iterations;
  }
  q.require_feasible(ratios);

  ExponentSolution out;
  out.beta = per_pair[0].value;
  out.q_star = q;
  out.per_pair = std::move(per_pair);
  out.method = SolutionMethod::kBinaryExactGrid;
  out.certified = true;
  out.diagnostics = {iterations, true};
  return out;
}

}  // namespace psk
