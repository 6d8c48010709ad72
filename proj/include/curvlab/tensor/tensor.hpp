#pragma once

#include "curvlab/expr/expr.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace curvlab {

/// Dense tensor of valence (upper, lower) over an n-dimensional chart.
/// Contravariant slots come first in the index tuple, then covariant ones.
class TensorField {
 public:
  TensorField() = default;
  TensorField(std::size_t dim, int upper, int lower);

  std::size_t dim() const { return dim_; }
  int upper() const { return upper_; }
  int lower() const { return lower_; }
  int rank() const { return upper_ + lower_; }
  std::size_t size() const { return comps_.size(); }

  Expr& operator[](std::span<const std::size_t> idx) { return comps_[offset(idx)]; }
  const Expr& operator[](std::span<const std::size_t> idx) const { return comps_[offset(idx)]; }
  Expr& at(std::initializer_list<std::size_t> idx) { return comps_[offset(idx)]; }
  const Expr& at(std::initializer_list<std::size_t> idx) const { return comps_[offset(idx)]; }

  /// Flat storage in row-major index order.
  std::vector<Expr>& data() { return comps_; }
  const std::vector<Expr>& data() const { return comps_; }

  std::size_t offset(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> index_of(std::size_t offset) const;

  /// Replaces every component by its simplified form.
  TensorField& simplify_all();
  /// True when every stored component is the literal constant 0.
  bool is_zero() const;

  // Declared symmetries between slot positions, used by the audits.
  std::vector<std::pair<int, int>> symmetric;
  std::vector<std::pair<int, int>> antisymmetric;

 private:
  std::size_t dim_ = 0;
  int upper_ = 0;
  int lower_ = 0;
  std::vector<Expr> comps_;
};

/// Calls f(idx) for every index tuple of length `rank` over 0..dim-1.
template <class F>
void for_each_index(std::size_t dim, int rank, F&& f) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(rank), 0);
  if (dim == 0) return;
  for (;;) {
    f(std::span<const std::size_t>(idx));
    int k = rank - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == dim) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) return;
  }
}

/// Symmetric (0,2) tensor from a grid.
TensorField covariant2(const std::vector<std::vector<Expr>>& grid);
/// (0,1) or (1,0) tensor from components.
TensorField covector(const std::vector<Expr>& comps);
TensorField vector_field(const std::vector<Expr>& comps);

TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField operator*(const Expr& s, const TensorField& t);

} // namespace curvlab
