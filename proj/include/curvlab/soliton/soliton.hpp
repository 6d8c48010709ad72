#pragma once

#include "curvlab/structure/checks.hpp"

namespace curvlab {

struct RBSolitonConfig {
  /// Potential vector field.
  std::vector<Expr> U;
  Rational rho{0};
  /// Fitted per point when absent.
  std::optional<Rational> lambda;
};

enum class SolitonClass { Expanding, Steady, Shrinking, Indeterminate };
std::string to_string(SolitonClass c);

/// lambda > 0 expanding, = 0 steady, < 0 shrinking.
SolitonClass classify_lambda(const Rational& lambda);
/// Float values within `tolerance` of 0 count as steady.
SolitonClass classify_lambda(const NumericValue& lambda, double tolerance = kFloatTolerance);

/// "Ricci", "Einstein", "traceless Ricci", "Schouten" or "" for other rho.
/// Einstein wins when rho = 1/2 coincides with 1/n or 1/(2(n-1)).
std::string soliton_name(const Rational& rho, std::size_t n);

struct SolitonReport {
  std::string name;
  /// (1/2) L_U g.
  TensorField half_lie;
  /// (1/2) L_U g + Ric.
  TensorField lhs;
  /// g^ij nabla_i U_j.
  Expr div_U;
  /// Given lambda: lhs - (lambda + rho r) g.
  std::optional<ResidualCheck> residual;
  /// Fitted lambda + rho r, one coefficient per point.
  std::optional<FitResult> combination;
  /// lambda can be read off the combination (rho = 0 or r constant).
  bool separable = true;
  std::optional<NumericValue> lambda;
  SolitonClass classification = SolitonClass::Indeterminate;
  /// (1 - rho n) psi1 + (1 - rho) psi2 - rho psi3 when psi's are supplied.
  std::optional<Expr> structural_lambda;
  std::vector<std::string> diagnostics;
};

SolitonReport soliton_residual(const CurvatureBundle& b, const RBSolitonConfig& cfg, std::span<const Point> points,
                               EvalMode mode = EvalMode::Rational,
                               const std::optional<std::array<Expr, 5>>& psi = std::nullopt);

Rational lambda_from_structure(const Rational& psi1, const Rational& psi2, const Rational& psi3, std::size_t n,
                               const Rational& rho);
Expr lambda_from_structure(const Expr& psi1, const Expr& psi2, const Expr& psi3, std::size_t n, const Rational& rho);

struct SpecializationRow {
  std::string name;
  Rational rho;
  Rational lambda;
  SolitonClass classification;
};

/// Ricci, Einstein, traceless Ricci and Schouten rows.
std::vector<SpecializationRow> specialization_table(const Rational& psi1, const Rational& psi2, const Rational& psi3,
                                                    std::size_t n);

/// g(nabla_xi1 xi1, Y) + 2 psi4 B(Y): vanishes for a soliton with potential xi1.
ResidualCheck generator_acceleration_check(const CurvatureBundle& b, const MsqeStructure& s,
                                           std::span<const Point> points, EvalMode mode = EvalMode::Rational);

struct TorseFormingConsequences {
  /// xi1 passed the torse-forming test; nothing else is filled otherwise.
  bool applicable = false;
  VectorFieldClass xi1_class;
  /// nabla_xi1 xi1 = 0.
  ResidualCheck geodesic;
  /// psi4 = 0.
  ResidualCheck psi4_zero;
  /// eps1 psi2 - eps2 psi3 - eps2 psi5 D(xi2,xi2), the value the fitted f must take.
  Expr predicted_f;
  /// Largest |f - predicted_f| over the points.
  NumericValue f_gap;
  bool f_matches = false;
  /// psi1 + eps1 psi2 - (lambda + rho r); present when lambda is given.
  std::optional<ResidualCheck> lambda_relation;
  /// xi2 as an eigenvector of D with eigenvalue D(xi2,xi2)/g(xi2,xi2).
  EigenvectorResult eigen;
  std::vector<std::string> diagnostics;
};

/// Requires psi's on the structure.
TorseFormingConsequences torse_forming_consequences(const CurvatureBundle& b, const MsqeStructure& s,
                                                    const RBSolitonConfig& cfg, std::span<const Point> points,
                                                    EvalMode mode = EvalMode::Rational);

struct ConharmonicFlatConsequences {
  ResidualCheck conharmonic_zero;
  /// The remaining fields are filled only when the conharmonic tensor vanishes.
  bool applicable = false;
  ResidualCheck scalar_zero;
  /// n psi1 + psi2 + psi3 = 0, when psi's are supplied.
  std::optional<ResidualCheck> psi_trace;
  Expr div_U;
  std::optional<NumericValue> lambda;
  /// div U - n lambda.
  std::optional<ResidualCheck> divergence_relation;
  /// lambda = 0 exactly when div U vanishes.
  std::optional<bool> steady_iff_divergence_free;
  SolitonClass classification = SolitonClass::Indeterminate;
  std::vector<std::string> diagnostics;
};

ConharmonicFlatConsequences conharmonic_flat_consequences(const CurvatureBundle& b, const RBSolitonConfig& cfg,
                                                          std::span<const Point> points,
                                                          EvalMode mode = EvalMode::Rational,
                                                          const std::optional<std::array<Expr, 5>>& psi = std::nullopt);

} // namespace curvlab
