#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace psk {

// Row-major dense matrix, just enough for the small tableau LPs solved here.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct LpResult {
  std::vector<double> x;
  double objective = 0.0;
  bool optimal = false;
  bool unbounded = false;
  int pivots = 0;
};

// Primal simplex with Bland's rule for
//   maximize c.x  subject to  A x = b,  x >= 0,
// started from `basis`: one column per row whose columns of A form the
// identity, with b >= 0 (a feasible starting vertex).
LpResult simplex_maximize(const DenseMatrix& a, std::span<const double> b,
                          std::span<const double> c,
                          std::vector<std::size_t> basis,
                          int max_pivots = 100000);

}  // namespace psk
