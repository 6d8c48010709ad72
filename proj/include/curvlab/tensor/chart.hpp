#pragma once

#include "curvlab/expr/expr.hpp"

#include <string>
#include <vector>

namespace curvlab {

/// How R(X,Y,Z,W) is labelled when printed. Storage is always g(R(X,Y)Z, W).
enum class RiemannSlots { Standard, LastPairSwapped };

struct Convention {
  /// Overall sign of the curvature operator. -1 gives
  /// Ric_12 = -1/(x1*x2) on the bundled example metric; +1 is the textbook
  /// R^l_ijk = d_i G^l_jk - ... convention. R, Ric and r all carry it.
  int ricci_sign = -1;
  RiemannSlots slots = RiemannSlots::Standard;

  static Convention reversed() { return {}; }
  static Convention textbook() { return {+1, RiemannSlots::Standard}; }

  /// "reversed" or "textbook".
  std::string name() const;
};

/// Square grid of expressions, row-major.
using ExprMatrix = std::vector<std::vector<Expr>>;

class ChartManifold {
 public:
  /// Throws std::invalid_argument when the sizes disagree, n < 2, or
  /// g is not symmetric after simplification.
  ChartManifold(std::vector<std::string> coords, ExprMatrix metric, Convention convention = {});

  std::size_t dimension() const { return coords_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const Expr& g(std::size_t i, std::size_t j) const { return metric_[i][j]; }
  const ExprMatrix& metric() const { return metric_; }
  const Convention& convention() const { return convention_; }
  void set_convention(Convention c) { convention_ = c; }

  /// Chart with the metric built from expression strings; lower[i][j] for j <= i.
  static ChartManifold parse(std::vector<std::string> coords,
                             const std::vector<std::vector<std::string>>& lower,
                             Convention convention = {});

 private:
  std::vector<std::string> coords_;
  ExprMatrix metric_;
  Convention convention_;
};

/// diag(entries) on coordinates x1..xn.
ChartManifold diagonal_chart(const std::vector<std::string>& entries, Convention convention = {});

/// Default coordinate names x1..xn.
std::vector<std::string> default_coords(std::size_t n);

} // namespace curvlab
