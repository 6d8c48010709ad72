#pragma once

#include "curvlab/derived/derived.hpp"
#include "curvlab/tensor/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvlab {

/// Least-squares fit of one sample point.
struct PointFit {
  Point point;
  std::vector<NumericValue> coefficients;
  /// target - model, one entry per row.
  std::vector<NumericValue> residual;
  std::size_t rank = 0;
  std::vector<std::vector<NumericValue>> null_space;
  bool exact = true;
};

/// Pointwise linear fit target_r = sum_c coef_c * regressor_{c,r} over a set
/// of sample points.
struct FitResult {
  std::vector<std::string> names;
  std::vector<std::string> row_labels;
  std::vector<PointFit> points;
  std::size_t points_skipped = 0;
  /// Largest |residual| per row over all points.
  std::vector<NumericValue> row_max;
  NumericValue max_residual;
  double rms_residual = 0.0;
  /// max |residual| / max(1, |target|) over float points.
  double max_relative = 0.0;
  double tolerance = kFloatTolerance;
  /// Every point was solved in exact arithmetic.
  bool exact = true;
  /// Coefficients agree across points (exactly, or to 1e-8 relative in float).
  bool point_independent = true;
  /// Smallest rank seen; less than names.size() means the regressors are collinear.
  std::size_t rank = 0;
  /// Null space at the first rank-deficient point.
  std::vector<std::vector<NumericValue>> null_space;
  std::vector<std::string> warnings;

  bool rank_deficient() const { return rank < names.size(); }
  bool passed() const;
  /// "exact", "approximate" or "fails".
  std::string verdict() const;
  /// Coefficients of the first solved point; empty when no point was solved.
  std::vector<NumericValue> coefficients() const;
};

inline constexpr double kPointIndependenceTolerance = 1e-8;

/// Generic driver. regressors[c][r] is column c at row r.
FitResult fit_linear(std::vector<std::string> names, std::vector<std::string> row_labels,
                     const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& regressors,
                     std::span<const Point> points, EvalMode mode = EvalMode::Rational,
                     double tolerance = kFloatTolerance);

/// Ric - msqe_ricci for one independent component.
struct ComponentResidual {
  std::string label;
  Expr residual;
  ResidualCheck check;
};

/// Three forms of the Ricci trace identity, each as r minus the prediction.
struct TraceAudit {
  /// r - n psi1 - psi2 - psi3.
  Expr riemannian;
  /// r - n psi1 - eps1 psi2 - eps2 psi3 - psi5 tr D.
  Expr signature_aware;
  /// r - 4 psi1 + psi2 - psi3 (unit timelike xi1 in four dimensions).
  Expr lorentzian;
  ResidualCheck riemannian_check, signature_check, lorentzian_check;
};

TraceAudit trace_audit(const CurvatureBundle& b, const MsqeStructure& s, std::span<const Point> points,
                       EvalMode mode = EvalMode::Rational);

struct MsqeFit {
  /// psi1..psi5 fitted from Ric.
  FitResult fit;
  /// Present when the structure carries its own psi's.
  std::vector<ComponentResidual> pinned;
  std::optional<TraceAudit> trace;
};

/// Fits Ric_ij = psi1 g + psi2 A A + psi3 B B + psi4 (A B + B A) + psi5 D over i <= j.
MsqeFit fit_msqe(const CurvatureBundle& b, const MsqeStructure& s, std::span<const Point> points,
                 EvalMode mode = EvalMode::Rational);

/// The five curvature-type blocks: G, g^(A A), g^(B B), g^(A B + B A), g^D.
std::array<TensorField, 5> quasi_constant_blocks(const TensorField& metric, const MsqeStructure& s);

struct QuasiConstantReport {
  /// f1..f5.
  FitResult fit;
  /// P with T from the field equation; present when physics data is given.
  std::optional<ResidualCheck> space_matter_zero;
  /// f1 = r/2 - psi1 + sigma, f_i = -psi_i/2; present with physics data and psi's.
  std::optional<std::array<Expr, 5>> predicted;
  /// R minus the ansatz with the predicted coefficients.
  std::optional<ResidualCheck> predicted_residual;
  /// Largest |fitted - predicted| per coefficient over the points.
  std::vector<NumericValue> coefficient_gap;
};

QuasiConstantReport check_quasi_constant_curvature(const CurvatureBundle& b, const MsqeStructure& s,
                                                   const std::optional<PhysicsConfig>& physics,
                                                   std::span<const Point> points,
                                                   EvalMode mode = EvalMode::Rational);

enum class RecurrenceClass { RicciSymmetric, RicciRecurrent, GeneralizedRicciRecurrent, Neither };
std::string to_string(RecurrenceClass c);

struct RecurrenceReport {
  ResidualCheck nabla_ric_zero;
  /// (nabla_k Ric)_ij = gamma_k Ric_ij.
  FitResult recurrent;
  /// (nabla_k Ric)_ij = gamma_k Ric_ij + delta_k g_ij.
  FitResult generalized;
  RecurrenceClass classification = RecurrenceClass::Neither;
  /// Ric proportional to g at some point: gamma and delta cannot be separated.
  bool degenerate = false;
};

/// `ric` is any symmetric (0,2) tensor; `gamma` the Christoffel symbols used for nabla.
RecurrenceReport fit_ricci_recurrence(const TensorField& ric, const TensorField& metric, const TensorField& gamma,
                                      std::span<const Point> points, EvalMode mode = EvalMode::Rational);
RecurrenceReport fit_ricci_recurrence(const CurvatureBundle& b, std::span<const Point> points,
                                      EvalMode mode = EvalMode::Rational);

/// "12", "1332": 1-based index labels.
std::string index_label(std::initializer_list<std::size_t> idx);

} // namespace curvlab
