#include "curvlab/derived/msqe_structure.hpp"

#include "curvlab/expr/simplify.hpp"

#include <stdexcept>

namespace curvlab {

MsqeStructure complete_structure(const MsqeInput& in, const CurvatureBundle& b) {
  const std::size_t n = b.dim();
  auto fill = [&](const std::optional<std::vector<Expr>>& vec, const std::optional<std::vector<Expr>>& form,
                  const char* name, std::vector<Expr>& out_vec, std::vector<Expr>& out_form) {
    if (vec && vec->size() != n) throw std::invalid_argument(std::string(name) + " has the wrong length");
    if (form && form->size() != n) throw std::invalid_argument(std::string(name) + " 1-form has the wrong length");
    if (vec) out_vec = *vec;
    if (form) out_form = *form;
    if (vec && !form) out_form = lower_index(vector_field(*vec), b.metric).data();
    if (form && !vec) out_vec = raise_index(covector(*form), b.inverse).data();
    if (!vec && !form) throw std::invalid_argument(std::string("structure needs ") + name + " or its 1-form");
  };
  MsqeStructure s;
  fill(in.xi1, in.A, "xi1", s.xi1, s.A);
  fill(in.xi2, in.B, "xi2", s.xi2, s.B);
  s.D = TensorField(n, 0, 2);
  s.D.symmetric.emplace_back(0, 1);
  if (!in.D.empty()) {
    if (in.D.size() != n) throw std::invalid_argument("D has the wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s.D.at({i, j}) = simplify(in.D[i].at(j));
    }
  }
  s.psi = in.psi;
  s.eps1 = in.eps1;
  s.eps2 = in.eps2;
  return s;
}

TensorField msqe_ricci(const MsqeStructure& s, const TensorField& metric) {
  if (!s.psi) throw std::invalid_argument("structure has no scalars");
  const auto& psi = *s.psi;
  const std::size_t n = metric.dim();
  TensorField out(n, 0, 2);
  out.symmetric.emplace_back(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at({i, j}) = simplify(psi[0] * metric.at({i, j}) + psi[1] * s.A[i] * s.A[j] +
                                psi[2] * s.B[i] * s.B[j] + psi[3] * (s.A[i] * s.B[j] + s.B[i] * s.A[j]) +
                                psi[4] * s.D.at({i, j}));
    }
  }
  return out;
}

} // namespace curvlab
