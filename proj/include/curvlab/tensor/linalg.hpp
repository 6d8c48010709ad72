#pragma once

#include "curvlab/expr/numeric.hpp"

#include <vector>

namespace curvlab {

using NumericMatrix = std::vector<std::vector<NumericValue>>;

struct LeastSquares {
  /// Minimum-norm minimizer of |A x - b|.
  std::vector<NumericValue> solution;
  /// A x - b at the solution.
  std::vector<NumericValue> residual;
  std::size_t rank = 0;
  /// Basis of ker A; empty when A has full column rank.
  std::vector<std::vector<NumericValue>> null_space;
  /// Computed in exact rational arithmetic.
  bool exact = true;
};

/// Exact normal equations with full-pivot elimination when every entry is
/// exact; otherwise an SVD in double precision. A is rows x cols.
LeastSquares least_squares(const NumericMatrix& A, const std::vector<NumericValue>& b);

} // namespace curvlab
