#include "curvlab/tensor/tensor.hpp"

#include "curvlab/expr/simplify.hpp"

#include <stdexcept>

namespace curvlab {

TensorField::TensorField(std::size_t dim, int upper, int lower)
    : dim_(dim), upper_(upper), lower_(lower) {
  if (upper < 0 || lower < 0) throw std::invalid_argument("negative valence");
  std::size_t count = 1;
  for (int k = 0; k < upper + lower; ++k) count *= dim;
  comps_.assign(count, Expr());
}

std::size_t TensorField::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != static_cast<std::size_t>(rank())) throw std::out_of_range("index has the wrong rank");
  std::size_t off = 0;
  for (auto i : idx) {
    if (i >= dim_) throw std::out_of_range("index beyond dimension");
    off = off * dim_ + i;
  }
  return off;
}

std::vector<std::size_t> TensorField::index_of(std::size_t off) const {
  std::vector<std::size_t> idx(static_cast<std::size_t>(rank()));
  for (std::size_t k = idx.size(); k-- > 0;) {
    idx[k] = off % dim_;
    off /= dim_;
  }
  return idx;
}

TensorField& TensorField::simplify_all() {
  for (auto& c : comps_) c = simplify(c);
  return *this;
}

bool TensorField::is_zero() const {
  for (const auto& c : comps_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

TensorField covariant2(const std::vector<std::vector<Expr>>& grid) {
  TensorField t(grid.size(), 0, 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) t.at({i, j}) = grid[i][j];
  }
  return t;
}

TensorField covector(const std::vector<Expr>& comps) {
  TensorField t(comps.size(), 0, 1);
  t.data() = comps;
  return t;
}

TensorField vector_field(const std::vector<Expr>& comps) {
  TensorField t(comps.size(), 1, 0);
  t.data() = comps;
  return t;
}

namespace {

void require_same_shape(const TensorField& a, const TensorField& b) {
  if (a.dim() != b.dim() || a.upper() != b.upper() || a.lower() != b.lower()) {
    throw std::invalid_argument("tensor shapes differ");
  }
}

} // namespace

TensorField operator+(const TensorField& a, const TensorField& b) {
  require_same_shape(a, b);
  TensorField out(a.dim(), a.upper(), a.lower());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = simplify(a.data()[k] + b.data()[k]);
  return out;
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  require_same_shape(a, b);
  TensorField out(a.dim(), a.upper(), a.lower());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = simplify(a.data()[k] - b.data()[k]);
  return out;
}

TensorField operator*(const Expr& s, const TensorField& t) {
  TensorField out(t.dim(), t.upper(), t.lower());
  for (std::size_t k = 0; k < t.size(); ++k) out.data()[k] = simplify(s * t.data()[k]);
  return out;
}

} // namespace curvlab
