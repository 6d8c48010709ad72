#pragma once

#include "curvlab/expr/expr.hpp"

namespace curvlab {

/// Rewrites e into a canonical sum of terms.
///
/// Each term is a rational coefficient times integer powers of coordinates,
/// at most one exp(...) factor, and negative powers of irreducible sums.
/// Positive powers of sums are expanded, like terms are merged, exp factors
/// are combined into a single exponential, and exp-free rational parts are
/// brought over a common denominator with exact cancellation of the sum
/// factors. Any expression that is zero as a polynomial (or as a quotient
/// whose denominators share those sum factors) becomes the constant 0.
/// Transcendental identities beyond exp(a)exp(b) = exp(a+b) are left alone.
///
/// The result is a fixed point: simplify(simplify(e)) == simplify(e).
/// Throws std::domain_error when e divides by an identically zero subexpression.
Expr simplify(const Expr& e);

/// simplify(e) is the constant 0.
bool is_identically_zero(const Expr& e);

} // namespace curvlab
