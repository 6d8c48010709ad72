#pragma once

#include "curvlab/structure/fit.hpp"

namespace curvlab {

/// Definition conditions on the generators, each as a residual that should vanish.
/// Violations are findings, never errors.
struct FrameAudit {
  /// A_i - g_ij xi1^j and B_i - g_ij xi2^j.
  ResidualCheck duality_A, duality_B;
  /// g^ij A_i A_j - eps1, g^ij B_i B_j - eps2, g^ij A_i B_j.
  ResidualCheck norm_A, norm_B, orthogonality;
  Expr a_dot_a, b_dot_b, a_dot_b;
  ResidualCheck d_symmetry;
  /// D(X, xi1) over the basis.
  ResidualCheck d_xi1;
  Expr trace_D;
  ResidualCheck trace_D_zero;
  std::vector<std::string> warnings;
};

FrameAudit audit_frame(const CurvatureBundle& b, const MsqeStructure& s, std::span<const Point> points,
                       EvalMode mode = EvalMode::Rational);

struct VectorFieldClass {
  /// nabla_i U^j = 0.
  ResidualCheck parallel;
  /// nabla_i U^j = mu delta_i^j; coefficient "mu".
  FitResult concircular;
  /// nabla_i U^j = f delta_i^j + alpha_i U^j; coefficients "f", "alpha1".."alphan".
  FitResult torse_forming;
  /// nabla_U U = 0.
  ResidualCheck geodesic;
  /// alpha_i + f U_i / g(U,U) from the fitted values; present when U is
  /// torse-forming and g(U,U) is a nonzero constant.
  std::optional<NumericValue> unit_consistency;

  bool is_parallel() const { return parallel.passed(); }
  bool is_concircular() const { return concircular.passed(); }
  bool is_torse_forming() const { return torse_forming.passed(); }
  bool is_geodesic() const { return geodesic.passed(); }
};

/// Throws std::invalid_argument for the zero vector field.
VectorFieldClass classify_vector_field(const CurvatureBundle& b, const std::vector<Expr>& U,
                                       std::span<const Point> points, EvalMode mode = EvalMode::Rational);

/// (nabla_X D)(Y,Z) - (nabla_Y D)(X,Z) over all index triples.
ResidualCheck codazzi_check(const CurvatureBundle& b, const TensorField& D, std::span<const Point> points,
                            EvalMode mode = EvalMode::Rational);

struct EigenvectorResult {
  /// D(xi,xi)/g(xi,xi), or the supplied candidate. Empty for a null xi without candidate.
  std::optional<Expr> eigenvalue;
  /// Pointwise least-squares eigenvalue, used when xi is null.
  std::optional<FitResult> null_fit;
  /// D(X,xi) - b g(X,xi) over the basis.
  ResidualCheck residual;
  bool null_vector = false;
};

EigenvectorResult eigenvector_check(const CurvatureBundle& b, const TensorField& D, const std::vector<Expr>& xi,
                                    std::span<const Point> points, EvalMode mode = EvalMode::Rational,
                                    const std::optional<Expr>& candidate = std::nullopt);

/// d(omega) components with i < j.
ResidualCheck oneform_closedness(const std::vector<Expr>& omega, std::span<const Point> points,
                                 EvalMode mode = EvalMode::Rational);

/// (psi1 + psi2) dA + psi4 dB, which vanishes when xi1 is concircular and the
/// scalars are constant.
ResidualCheck closedness_linkage(const MsqeStructure& s, std::span<const Point> points,
                                 EvalMode mode = EvalMode::Rational);

} // namespace curvlab
