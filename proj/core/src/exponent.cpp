#include "psk/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "psk/scalar_search.hpp"

namespace psk {

std::string_view to_string(SolutionMethod method) {
  switch (method) {
    case SolutionMethod::kBinaryExactGrid:
      return "binary-exact-grid";
    case SolutionMethod::kGeneralCoordinateAscent:
      return "general-coordinate-ascent";
  }
  return "unknown";
}

std::vector<HypothesisPair> hypothesis_pairs(std::size_t num_states) {
  std::vector<HypothesisPair> pairs;
  for (std::size_t ell = 0; ell < num_states; ++ell) {
    for (std::size_t m = ell + 1; m < num_states; ++m) pairs.push_back({ell, m});
  }
  return pairs;
}

PairExponent pair_exponent(const ControlDistribution& q, HypothesisPair pair,
                           const PskConstellation& constellation,
                           const OperatingRatios& ratios) {
  if (pair.ell >= constellation.num_states() ||
      pair.m >= constellation.num_states() || pair.ell == pair.m) {
    throw std::invalid_argument("invalid hypothesis pair");
  }
  struct Term {
    RatePair rates;
    double weight;
  };
  std::vector<Term> terms;
  terms.reserve(q.size());
  for (const auto& atom : q.atoms()) {
    RatePair rates(normalized_rate(atom.point, pair.ell, constellation, ratios),
                   normalized_rate(atom.point, pair.m, constellation, ratios));
    if (!rates.degenerate()) terms.push_back({rates, atom.weight});
  }
  if (terms.empty()) return {pair, 0.5, 0.0};

  auto value = [&](double s) {
    double acc = 0.0;
    for (const auto& t : terms) acc += t.weight * chernoff_s(t.rates, s);
    return acc;
  };
  auto slope = [&](double s) {
    double acc = 0.0;
    for (const auto& t : terms) {
      acc += t.weight * chernoff_s_derivative(t.rates, s);
    }
    return acc;
  };
  const auto best = maximize_concave(value, slope, 0.0, 1.0);
  return {pair, best.x, best.value};
}

std::vector<PairExponent> pair_exponents(const ControlDistribution& q,
                                         const PskConstellation& constellation,
                                         const OperatingRatios& ratios) {
  std::vector<PairExponent> out;
  for (const auto& pair : hypothesis_pairs(constellation.num_states())) {
    out.push_back(pair_exponent(q, pair, constellation, ratios));
  }
  return out;
}

double exponent_of(const ControlDistribution& q,
                   const PskConstellation& constellation,
                   const OperatingRatios& ratios) {
  double beta = std::numeric_limits<double>::infinity();
  for (const auto& p : pair_exponents(q, constellation, ratios)) {
    beta = std::min(beta, p.value);
  }
  return beta;
}

double convexity_margin(double s, double r, double v) {
  if (!(s > 0.0 && s <= 0.5)) {
    throw std::invalid_argument("convexity_margin requires s in (0, 1/2]");
  }
  if (!(r >= 0.0)) throw std::invalid_argument("convexity_margin requires r >= 0");
  if (!(v > 0.0 && v < 1.0)) {
    throw std::invalid_argument("convexity_margin requires v in (0, 1)");
  }
  if (r == 0.0) {
    return 4.0 * s * (1.0 - 2.0 * s) * v +
           std::pow(1.0 - v, 2.0 * (1.0 - s)) *
               (std::pow(1.0 + v, 2.0 * s) - std::pow(1.0 - v, 2.0 * s));
  }
  const double lam0 = (1.0 - v) * (1.0 - v) + r;
  const double lam1 = (1.0 + v) * (1.0 + v) + r;
  const double dark_term = r / lam0 * (4.0 * v * v) / lam1;
  // Chernoff divergence at 1-s, the term subtracted in the certificate.
  const double c_flip = (1.0 - s) * lam0 + s * lam1 -
                        std::pow(lam0, 1.0 - s) * std::pow(lam1, s);
  return 8.0 * s * (1.0 - s) * v * (1.0 - dark_term) - c_flip;
}

}  // namespace psk
