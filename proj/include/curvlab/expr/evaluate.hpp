#pragma once

#include "curvlab/expr/expr.hpp"
#include "curvlab/expr/numeric.hpp"

namespace curvlab {

enum class EvalMode {
  /// Exact rationals wherever every sub-operation stays rational.
  Rational,
  /// Everything in double precision.
  Float,
};

/// Evaluates e at p. Throws EvaluationError on division by zero or 0^-k,
/// std::out_of_range when e references a coordinate beyond p.
NumericValue evaluate(const Expr& e, const Point& p, EvalMode mode = EvalMode::Rational);

/// d e / d x_coord, simplified.
Expr differentiate(const Expr& e, std::size_t coord);

} // namespace curvlab
