#pragma once

#include "curvlab/tensor/curvature.hpp"

#include <array>
#include <optional>

namespace curvlab {

/// Generators, their 1-forms, the symmetric tensor D and the scalars of the
/// five-term Ricci decomposition
///   Ric = psi1 g + psi2 A(x)A + psi3 B(x)B + psi4 (A(x)B + B(x)A) + psi5 D.
struct MsqeStructure {
  std::vector<Expr> xi1, xi2;  // vector fields
  std::vector<Expr> A, B;      // 1-forms
  TensorField D;               // (0,2)
  std::optional<std::array<Expr, 5>> psi;
  int eps1 = 1;
  int eps2 = 1;
};

/// Partially specified structure as it comes from a manifest.
struct MsqeInput {
  std::optional<std::vector<Expr>> xi1, xi2, A, B;
  ExprMatrix D;
  std::optional<std::array<Expr, 5>> psi;
  int eps1 = 1;
  int eps2 = 1;
};

/// Fills whichever of xi / its 1-form is missing by metric (co)duality.
/// Throws std::invalid_argument when neither is given for a generator.
MsqeStructure complete_structure(const MsqeInput& in, const CurvatureBundle& b);

/// Psi_1 g + ... + Psi_5 D with the structure's scalars.
TensorField msqe_ricci(const MsqeStructure& s, const TensorField& metric);

} // namespace curvlab
