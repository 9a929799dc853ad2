#include "psk/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace psk {

LpResult simplex_maximize(const DenseMatrix& a, std::span<const double> b,
                          std::span<const double> c,
                          std::vector<std::size_t> basis, int max_pivots) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n || basis.size() != m) {
    throw std::invalid_argument("simplex: dimension mismatch");
  }
  constexpr double kEps = 1e-12;
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < -kEps) throw std::invalid_argument("simplex: b must be >= 0");
    if (basis[r] >= n) throw std::invalid_argument("simplex: bad basis index");
    for (std::size_t i = 0; i < m; ++i) {
      const double expected = (i == r) ? 1.0 : 0.0;
      if (std::abs(a(i, basis[r]) - expected) > kEps) {
        throw std::invalid_argument("simplex: basis columns must be identity");
      }
    }
  }

  // Tableau [A | b]; the reduced-cost row is kept separately.
  DenseMatrix t(m, n + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) t(r, j) = a(r, j);
    t(r, n) = std::max(0.0, b[r]);
  }
  std::vector<double> reduced(n + 1, 0.0);
  auto recompute_reduced = [&] {
    for (std::size_t j = 0; j <= n; ++j) {
      double z = 0.0;
      for (std::size_t r = 0; r < m; ++r) z += c[basis[r]] * t(r, j);
      reduced[j] = (j < n) ? z - c[j] : z;
    }
  };
  recompute_reduced();

  LpResult result;
  for (; result.pivots < max_pivots; ++result.pivots) {
    // Bland: lowest-index improving column.
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (reduced[j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter == n) {
      result.optimal = true;
      break;
    }
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double coef = t(r, enter);
      if (coef > kEps) {
        const double ratio = t(r, n) / coef;
        if (ratio < best_ratio - kEps ||
            (std::abs(ratio - best_ratio) <= kEps && leave < m &&
             basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) {
      result.unbounded = true;
      break;
    }
    const double pivot = t(leave, enter);
    for (std::size_t j = 0; j <= n; ++j) t(leave, j) /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double factor = t(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) t(r, j) -= factor * t(leave, j);
    }
    const double factor = reduced[enter];
    for (std::size_t j = 0; j <= n; ++j) reduced[j] -= factor * t(leave, j);
    basis[leave] = enter;
  }

  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) result.x[basis[r]] = std::max(0.0, t(r, n));
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace psk
