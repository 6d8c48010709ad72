#include "curvlab/structure/checks.hpp"

#include "curvlab/expr/simplify.hpp"

#include <algorithm>
#include <stdexcept>

namespace curvlab {

namespace {

ResidualCheck accumulator() {
  ResidualCheck c;
  c.symbolic_zero = true;
  return c;
}

// sum_j t_ij v^j
std::vector<Expr> contract_vector(const TensorField& t, const std::vector<Expr>& v) {
  const std::size_t n = v.size();
  std::vector<Expr> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (!t.at({i, j}).is_zero() && !v[j].is_zero()) terms.push_back(t.at({i, j}) * v[j]);
    }
    out[i] = simplify(Expr::sum(std::move(terms)));
  }
  return out;
}

Expr inner(const TensorField& inverse, const std::vector<Expr>& a, const std::vector<Expr>& b) {
  return simplify(apply2(inverse, a, b));
}

} // namespace

FrameAudit audit_frame(const CurvatureBundle& b, const MsqeStructure& s, std::span<const Point> points,
                       EvalMode mode) {
  const std::size_t n = b.dim();
  FrameAudit a;
  a.duality_A = accumulator();
  a.duality_B = accumulator();
  a.d_symmetry = accumulator();
  a.d_xi1 = accumulator();
  auto low1 = contract_vector(b.metric, s.xi1);
  auto low2 = contract_vector(b.metric, s.xi2);
  auto dxi1 = contract_vector(s.D, s.xi1);
  for (std::size_t i = 0; i < n; ++i) {
    a.duality_A.merge(check_zero(std::vector<Expr>{s.A[i], -low1[i]}, points, mode));
    a.duality_B.merge(check_zero(std::vector<Expr>{s.B[i], -low2[i]}, points, mode));
    a.d_xi1.merge(check_zero(dxi1[i], points, mode));
    for (std::size_t j = i + 1; j < n; ++j) {
      a.d_symmetry.merge(check_zero(std::vector<Expr>{s.D.at({i, j}), -s.D.at({j, i})}, points, mode));
    }
  }
  a.a_dot_a = inner(b.inverse, s.A, s.A);
  a.b_dot_b = inner(b.inverse, s.B, s.B);
  a.a_dot_b = inner(b.inverse, s.A, s.B);
  a.norm_A = check_zero(std::vector<Expr>{a.a_dot_a, Expr::integer(-s.eps1)}, points, mode);
  a.norm_B = check_zero(std::vector<Expr>{a.b_dot_b, Expr::integer(-s.eps2)}, points, mode);
  a.orthogonality = check_zero(a.a_dot_b, points, mode);
  a.trace_D = simplify(metric_trace(s.D, b.inverse));
  a.trace_D_zero = check_zero(a.trace_D, points, mode);
  if (s.psi) {
    for (std::size_t k = 1; k < 5; ++k) {
      if (simplify((*s.psi)[k]).is_zero()) a.warnings.push_back("psi" + std::to_string(k + 1) + " vanishes identically");
    }
  }
  if (!a.trace_D_zero.passed()) a.warnings.push_back("D is not trace-free");
  return a;
}

VectorFieldClass classify_vector_field(const CurvatureBundle& b, const std::vector<Expr>& U,
                                       std::span<const Point> points, EvalMode mode) {
  const std::size_t n = b.dim();
  if (U.size() != n) throw std::invalid_argument("vector field has the wrong number of components");
  if (std::all_of(U.begin(), U.end(), [](const Expr& e) { return simplify(e).is_zero(); })) {
    throw std::invalid_argument("zero vector field");
  }
  TensorField nabla = covariant_derivative(vector_field(U), b.christoffel);  // [j][i] = nabla_i U^j
  VectorFieldClass out;
  out.parallel = check_zero(nabla, points, mode);

  std::vector<Expr> target;
  std::vector<std::string> labels;
  std::vector<Expr> delta;
  std::vector<std::vector<Expr>> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      target.push_back(nabla.at({j, i}));
      labels.push_back(index_label({i}) + ";" + index_label({j}));
      delta.push_back(Expr::integer(i == j ? 1 : 0));
      for (std::size_t k = 0; k < n; ++k) alpha[k].push_back(k == i ? U[j] : Expr());
    }
  }
  out.concircular = fit_linear({"mu"}, labels, target, {delta}, points, mode);
  std::vector<std::string> names{"f"};
  std::vector<std::vector<Expr>> cols{delta};
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back("alpha" + std::to_string(k + 1));
    cols.push_back(alpha[k]);
  }
  out.torse_forming = fit_linear(names, labels, target, cols, points, mode);

  out.geodesic = accumulator();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < n; ++i) {
      if (!U[i].is_zero() && !nabla.at({j, i}).is_zero()) terms.push_back(U[i] * nabla.at({j, i}));
    }
    out.geodesic.merge(check_zero(terms, points, mode));
  }

  Expr norm = simplify(apply2(b.metric, U, U));
  if (out.torse_forming.passed() && norm.is_constant() && !norm.is_zero()) {
    auto low = contract_vector(b.metric, U);
    NumericValue worst;
    for (const auto& pf : out.torse_forming.points) {
      try {
        const NumericValue& f = pf.coefficients[0];
        NumericValue gu = evaluate(norm, pf.point, mode);
        for (std::size_t i = 0; i < n; ++i) {
          NumericValue ui = low[i].is_zero() ? NumericValue() : evaluate(low[i], pf.point, mode);
          NumericValue r = (pf.coefficients[i + 1] + f * ui / gu).abs();
          if (worst < r) worst = r;
        }
      } catch (const EvaluationError&) {
      }
    }
    out.unit_consistency = worst;
  }
  return out;
}

ResidualCheck codazzi_check(const CurvatureBundle& b, const TensorField& D, std::span<const Point> points,
                            EvalMode mode) {
  const std::size_t n = b.dim();
  TensorField nd = covariant_derivative(D, b.christoffel);
  ResidualCheck out = accumulator();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        out.merge(check_zero(std::vector<Expr>{nd.at({x, y, z}), -nd.at({y, x, z})}, points, mode));
      }
    }
  }
  return out;
}

EigenvectorResult eigenvector_check(const CurvatureBundle& b, const TensorField& D, const std::vector<Expr>& xi,
                                    std::span<const Point> points, EvalMode mode, const std::optional<Expr>& candidate) {
  const std::size_t n = b.dim();
  if (std::all_of(xi.begin(), xi.end(), [](const Expr& e) { return simplify(e).is_zero(); })) {
    throw std::invalid_argument("zero vector field");
  }
  EigenvectorResult out;
  auto dx = contract_vector(D, xi);
  auto gx = contract_vector(b.metric, xi);
  Expr gxx = simplify(apply2(b.metric, xi, xi));
  out.null_vector = gxx.is_zero();
  if (candidate) {
    out.eigenvalue = simplify(*candidate);
  } else if (!out.null_vector) {
    out.eigenvalue = simplify(apply2(D, xi, xi) / gxx);
  }
  if (out.null_vector) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(index_label({i}));
    out.null_fit = fit_linear({"b"}, labels, dx, {gx}, points, mode);
  }
  if (out.eigenvalue) {
    out.residual = accumulator();
    for (std::size_t i = 0; i < n; ++i) {
      out.residual.merge(check_zero(std::vector<Expr>{dx[i], -(*out.eigenvalue * gx[i])}, points, mode));
    }
  }
  return out;
}

ResidualCheck oneform_closedness(const std::vector<Expr>& omega, std::span<const Point> points, EvalMode mode) {
  TensorField d = exterior_derivative(omega);
  ResidualCheck out = accumulator();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    for (std::size_t j = i + 1; j < omega.size(); ++j) out.merge(check_zero(d.at({i, j}), points, mode));
  }
  return out;
}

ResidualCheck closedness_linkage(const MsqeStructure& s, std::span<const Point> points, EvalMode mode) {
  if (!s.psi) throw std::invalid_argument("linkage check needs psi1..psi5");
  const auto& psi = *s.psi;
  TensorField dA = exterior_derivative(s.A);
  TensorField dB = exterior_derivative(s.B);
  Expr c = simplify(psi[0] + psi[1]);
  ResidualCheck out = accumulator();
  for (std::size_t i = 0; i < s.A.size(); ++i) {
    for (std::size_t j = i + 1; j < s.A.size(); ++j) {
      out.merge(check_zero(std::vector<Expr>{c * dA.at({i, j}), psi[3] * dB.at({i, j})}, points, mode));
    }
  }
  return out;
}

} // namespace curvlab
