#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "psk/exponent.hpp"
#include "psk/simplex.hpp"

namespace psk {
namespace {

// Pulls the LP toward the cheapest vertex among (near-)ties in t.
constexpr double kEnergyPenalty = 1e-11;

ControlDistribution uniform_on_feasible(const std::vector<Complex>& grid,
                                        const OperatingRatios& ratios) {
  std::vector<Complex> feasible;
  for (const auto& v : grid) {
    if (std::norm(v) <= ratios.r_ce() + 1e-12) feasible.push_back(v);
  }
  const double w = 1.0 / static_cast<double>(feasible.size());
  std::vector<Atom> atoms;
  atoms.reserve(feasible.size());
  for (const auto& v : feasible) atoms.push_back({v, w});
  return ControlDistribution(std::move(atoms));
}

double min_value(const std::vector<PairExponent>& per_pair) {
  double beta = per_pair.front().value;
  for (const auto& p : per_pair) beta = std::min(beta, p.value);
  return beta;
}

}  // namespace

ExponentSolution optimize_general(const PskConstellation& constellation,
                                  const OperatingRatios& ratios,
                                  const GeneralOptions& options) {
  if (options.grid_k < 1 || options.max_iterations < 1) {
    throw std::invalid_argument("optimize_general: bad options");
  }
  const auto grid = control_grid(options.grid_k, ratios);
  const auto pairs = hypothesis_pairs(constellation.num_states());
  const std::size_t n = grid.size();
  const std::size_t num_pairs = pairs.size();

  // rates[m][i] = Lambda_m(grid[i])
  std::vector<std::vector<double>> rates(constellation.num_states(),
                                         std::vector<double>(n));
  for (std::size_t m = 0; m < constellation.num_states(); ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      rates[m][i] = normalized_rate(grid[i], m, constellation, ratios);
    }
  }

  ControlDistribution q = uniform_on_feasible(grid, ratios);
  auto per_pair = pair_exponents(q, constellation, ratios);
  double beta = min_value(per_pair);

  // Columns: Q_0..Q_{n-1}, t, pair slacks, energy slack.
  // Rows: one per pair (t - E_Q[C] + slack = 0), normalization, energy.
  const std::size_t col_t = n;
  const std::size_t col_pair_slack = n + 1;
  const std::size_t col_energy_slack = n + 1 + num_pairs;
  const std::size_t cols = col_energy_slack + 1;
  const std::size_t row_norm = num_pairs;
  const std::size_t row_energy = num_pairs + 1;
  const std::size_t rows = num_pairs + 2;

  std::vector<double> b(rows, 0.0);
  b[row_norm] = 1.0;
  b[row_energy] = ratios.r_ce();
  std::vector<double> c(cols, 0.0);
  c[col_t] = 1.0;
  for (std::size_t i = 0; i < n; ++i) c[i] = -kEnergyPenalty * std::norm(grid[i]);

  SolverDiagnostics diag{0, false};
  for (int it = 0; it < options.max_iterations; ++it) {
    diag.iterations = it + 1;
    DenseMatrix a(rows, cols);
    for (std::size_t p = 0; p < num_pairs; ++p) {
      const double s = per_pair[p].s_star;
      for (std::size_t i = 0; i < n; ++i) {
        const RatePair rp(rates[pairs[p].ell][i], rates[pairs[p].m][i]);
        a(p, i) = -chernoff_s(rp, s);
      }
      a(p, col_t) = 1.0;
      a(p, col_pair_slack + p) = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      a(row_norm, i) = 1.0;
      a(row_energy, i) = std::norm(grid[i]);
    }
    a(row_energy, col_energy_slack) = 1.0;

    // Start from Q = delta_0: the origin is uninformative, so its column is
    // a unit vector on the normalization row.
    std::vector<std::size_t> basis(rows);
    for (std::size_t p = 0; p < num_pairs; ++p) basis[p] = col_pair_slack + p;
    basis[row_norm] = 0;
    basis[row_energy] = col_energy_slack;

    const LpResult lp = simplex_maximize(a, b, c, basis);
    if (!lp.optimal) {
      throw std::runtime_error("optimize_general: LP did not reach optimality");
    }

    std::vector<Atom> atoms;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lp.x[i] > 1e-14) {
        atoms.push_back({grid[i], lp.x[i]});
        total += lp.x[i];
      }
    }
    for (auto& atom : atoms) atom.weight /= total;
    ControlDistribution next(std::move(atoms));
    auto next_pairs = pair_exponents(next, constellation, ratios);
    const double next_beta = min_value(next_pairs);

    if (next_beta > beta && next.feasible(ratios)) {
      const bool small_step = next_beta - beta < options.tolerance;
      q = std::move(next);
      per_pair = std::move(next_pairs);
      beta = next_beta;
      if (small_step) {
        diag.converged = true;
        break;
      }
    } else {
      diag.converged = true;
      break;
    }
  }

  ExponentSolution out;
  out.beta = beta;
  out.q_star = std::move(q);
  out.per_pair = std::move(per_pair);
  out.method = SolutionMethod::kGeneralCoordinateAscent;
  out.certified = true;
  out.diagnostics = diag;
  return out;
}

}  // namespace psk
