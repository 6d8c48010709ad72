#pragma once

#include "curvlab/tensor/curvature.hpp"
#include "curvlab/tensor/sampling.hpp"

#include <string>
#include <vector>

namespace curvlab {

struct IdentityResult {
  std::string name;
  /// False when the identity does not apply in this dimension.
  bool applicable = true;
  ResidualCheck check;
};

/// First Bianchi, Riemann pair symmetries, metric compatibility, conformal
/// trace-freeness and last-pair antisymmetry, the conharmonic trace identity
/// and the contracted second Bianchi identity via two independent paths.
std::vector<IdentityResult> identity_suite(const CurvatureBundle& b, std::span<const Point> points,
                                           EvalMode mode = EvalMode::Rational);

} // namespace curvlab
