#pragma once

#include "curvlab/derived/msqe_structure.hpp"
#include "curvlab/tensor/sampling.hpp"

#include <string>

namespace curvlab {

struct PhysicsConfig {
  Rational kappa{1};
  /// Energy density; may depend on the coordinates.
  Expr sigma;
};

/// C_ijkl = R_ijkl - (Ric_jk g_il - Ric_ik g_jl + g_jk Ric_il - g_ik Ric_jl)/(n-2)
///          + r (g_jk g_il - g_ik g_jl)/((n-1)(n-2)).
/// Throws std::invalid_argument for n < 4.
TensorField conformal_tensor(const CurvatureBundle& b);

/// The conformal tensor without the scalar-curvature term. Requires n >= 3.
TensorField conharmonic_tensor(const CurvatureBundle& b);

/// R - r/(n(n-1)) G.
TensorField concircular_tensor(const CurvatureBundle& b);

/// G_ijkl = g_il g_jk - g_ik g_jl.
TensorField g_tensor(const TensorField& metric);

/// (g ^ T)_ijkl = g_il T_jk + g_jk T_il - g_ik T_jl - g_jl T_ik.
/// Throws std::invalid_argument when T is not symmetric.
TensorField kulkarni_wedge(const TensorField& metric, const TensorField& T);

/// T = (Ric - r/2 g)/kappa. Throws std::invalid_argument when kappa = 0.
TensorField energy_momentum(const CurvatureBundle& b, const PhysicsConfig& cfg);

/// P = R + kappa/2 (g ^ T) - sigma G.
TensorField space_matter(const CurvatureBundle& b, const TensorField& T, const PhysicsConfig& cfg);

/// Contracts the derivative slot of nabla t with the last slot of t:
/// (div t)_{a..} = g^{wl} (nabla_l t)_{a.. w}. Accepts (0,3) and (0,4) input.
TensorField divergence(const TensorField& t, const CurvatureBundle& b);

/// (nabla_X Ric)(Y,Z) - (nabla_Y Ric)(X,Z).
TensorField ricci_curl(const CurvatureBundle& b);

/// div P when T comes from the field equation:
///   div R + 1/2 curl Ric - g(Y,Z)(X(r)/4 + X(sigma)) + g(X,Z)(Y(r)/4 + Y(sigma)).
TensorField space_matter_divergence_efe(const CurvatureBundle& b, const PhysicsConfig& cfg);

/// Gradient of a scalar as a (0,1) tensor.
TensorField gradient(const Expr& f, std::size_t dim);

/// Pseudosymmetry operators for a (0,4) curvature-type tensor C:
/// lhs(X,Y,Z,W) = Ric(C(X,Y)Z, W) + Ric(Z, C(X,Y)W), stored [X][Y][Z][W].
TensorField curvature_action_on_ricci(const TensorField& C, const CurvatureBundle& b);

/// Q(g,Ric)(Z,W;X,Y) = g(Y,Z)Ric(X,W) - g(X,Z)Ric(Y,W) + g(Y,W)Ric(X,Z) - g(X,W)Ric(Y,Z),
/// stored [X][Y][Z][W].
TensorField tachibana(const CurvatureBundle& b);

struct PseudosymmetryPoint {
  Point point;
  /// Least-squares F_Ric; empty when Q(g,Ric) vanishes at the point.
  std::optional<NumericValue> f_ric;
  /// max |lhs - F Q| at the point.
  NumericValue residual;
};

struct PseudosymmetryReport {
  std::vector<PseudosymmetryPoint> points;
  /// m = -R(xi2,xi1,xi1,xi2)(n-2)/Psi5 + D(xi2,xi2).
  Expr m;
  /// E(X) = (R(xi2,xi1,xi1,xi2) - Psi5 D(xi2,xi2)/(n-2)) B(X) + Psi5 D(X,xi2)/(n-2).
  std::vector<Expr> E;
  /// Metric dual of E.
  std::vector<Expr> theta;
  /// D(X,xi2) - m g(X,xi2) over the basis.
  ResidualCheck eigen_residual;
  bool eigenvalue_case = false;
  /// R(X,Y,xi1,xi2) - (E(X)A(Y) - E(Y)A(X)).
  ResidualCheck identity_residual;
  /// R(X,Y,xi1,xi2) alone, the eigenvalue-case conclusion.
  ResidualCheck vanishing_residual;
  /// E(X) - g(X,theta).
  ResidualCheck duality_residual;
  std::vector<std::string> warnings;
};

/// Throws std::invalid_argument when psi5 is identically zero or psi is missing.
PseudosymmetryReport pseudosymmetry_analysis(const CurvatureBundle& b, const MsqeStructure& s,
                                             std::span<const Point> points,
                                             EvalMode mode = EvalMode::Rational);

/// Convenience: evaluates a tensor component grid at a point.
std::vector<NumericValue> evaluate_all(const TensorField& t, const Point& p, EvalMode mode);

} // namespace curvlab
