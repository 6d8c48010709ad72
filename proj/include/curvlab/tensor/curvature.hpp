#pragma once

#include "curvlab/expr/evaluate.hpp"
#include "curvlab/tensor/chart.hpp"
#include "curvlab/tensor/tensor.hpp"

#include <stdexcept>

namespace curvlab {

class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything derived from the metric alone. Built once per chart.
struct CurvatureBundle {
  ChartManifold chart;
  TensorField metric;          // (0,2)
  TensorField inverse;         // (2,0)
  TensorField christoffel;     // (1,2): [k][i][j] = Gamma^k_ij
  TensorField riemann_up;      // (1,3): [l][i][j][k], R(d_i,d_j)d_k = R^l_ijk d_l
  TensorField riemann;         // (0,4): R_ijkl = g(R(d_i,d_j)d_k, d_l)
  TensorField ricci;           // (0,2)
  Expr scalar;

  std::size_t dim() const { return chart.dimension(); }
};

/// Diagonal and block-diagonal metrics are inverted blockwise; other blocks
/// use the adjugate. Throws SingularMetricError when det g simplifies to 0.
TensorField inverse_metric(const ChartManifold& m);

TensorField christoffel(const ChartManifold& m, const TensorField& inverse);

/// Returns the (1,3) tensor; `lowered` receives the (0,4) form.
TensorField riemann(const ChartManifold& m, const TensorField& gamma, TensorField& lowered);

/// Ric_jk = R^i_ijk (contraction of the first and last slot of the lowered tensor).
void ricci_and_scalar(const TensorField& riemann_up, const TensorField& inverse, TensorField& ricci,
                      Expr& scalar);

CurvatureBundle compute_curvature(const ChartManifold& m);

/// Adds one covariant slot, placed first among the covariant slots:
/// (nabla T)^{a..}_{i b..} = nabla_i T^{a..}_{b..}.
TensorField covariant_derivative(const TensorField& t, const TensorField& gamma);

/// (L_U g)_ij = U^k d_k g_ij + g_kj d_i U^k + g_ik d_j U^k.
TensorField lie_derivative_metric(const ChartManifold& m, const std::vector<Expr>& U);

/// Sectional curvature of span(X,Y) at p, independent of the sign convention
/// (positive on round spheres). Throws std::domain_error for a degenerate plane.
NumericValue sectional_curvature(const CurvatureBundle& b, const std::vector<Expr>& X,
                                 const std::vector<Expr>& Y, const Point& p,
                                 EvalMode mode = EvalMode::Rational);

/// d(omega)_ij = d_i omega_j - d_j omega_i.
TensorField exterior_derivative(const std::vector<Expr>& omega);
/// Same quantity via nabla_i omega_j - nabla_j omega_i.
TensorField exterior_derivative_covariant(const std::vector<Expr>& omega, const TensorField& gamma);

/// Index helpers over the metric.
TensorField lower_index(const TensorField& vec, const TensorField& metric);
TensorField raise_index(const TensorField& covec, const TensorField& inverse);

/// Contracts slots a and b of t (slot numbers over the whole index tuple).
/// When both are covariant the inverse metric is used; when one is upper a
/// plain trace is taken.
TensorField contract(const TensorField& t, int a, int b, const TensorField& inverse);

/// Sum over i,j of g^ij T_ij for a (0,2) tensor.
Expr metric_trace(const TensorField& t, const TensorField& inverse);

/// T(X,Y) for a (0,2) tensor and vector component lists.
Expr apply2(const TensorField& t, const std::vector<Expr>& X, const std::vector<Expr>& Y);

} // namespace curvlab
