#include "curvlab/soliton/soliton.hpp"

#include "curvlab/expr/simplify.hpp"

#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

Expr rat(const Rational& q) { return Expr::constant(q); }

Expr divergence_of(const CurvatureBundle& b, const std::vector<Expr>& U) {
  TensorField nabla = covariant_derivative(vector_field(U), b.christoffel);
  return simplify(contract(nabla, 0, 1, b.inverse).data().front());
}

// Residual check from values already computed per point.
ResidualCheck pointwise(const std::vector<std::pair<NumericValue, double>>& values, double tolerance) {
  ResidualCheck c;
  c.tolerance = tolerance;
  for (const auto& [v, scale] : values) {
    ++c.points_used;
    if (v.is_exact()) {
      if (!v.is_zero()) c.exact_failure = true;
    } else {
      c.exact = false;
      c.max_relative = std::max(c.max_relative, std::fabs(v.to_double()) / std::max(1.0, scale));
    }
    if (c.max_abs.abs() < v.abs()) c.max_abs = v.abs();
  }
  return c;
}

} // namespace

std::string to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::Expanding: return "expanding";
    case SolitonClass::Steady: return "steady";
    case SolitonClass::Shrinking: return "shrinking";
    case SolitonClass::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

SolitonClass classify_lambda(const Rational& lambda) {
  int s = sgn(lambda);
  return s > 0 ? SolitonClass::Expanding : s < 0 ? SolitonClass::Shrinking : SolitonClass::Steady;
}

SolitonClass classify_lambda(const NumericValue& lambda, double tolerance) {
  if (lambda.is_exact()) return classify_lambda(lambda.exact());
  double x = lambda.to_double();
  if (std::fabs(x) <= tolerance) return SolitonClass::Steady;
  return x > 0 ? SolitonClass::Expanding : SolitonClass::Shrinking;
}

std::string soliton_name(const Rational& rho, std::size_t n) {
  const auto nn = static_cast<long>(n);
  if (rho == 0) return "Ricci";
  if (rho == Rational(1, 2)) return "Einstein";
  if (rho == make_rational(1, nn)) return "traceless Ricci";
  if (rho == make_rational(1, 2 * (nn - 1))) return "Schouten";
  return "";
}

SolitonReport soliton_residual(const CurvatureBundle& b, const RBSolitonConfig& cfg, std::span<const Point> points,
                               EvalMode mode, const std::optional<std::array<Expr, 5>>& psi) {
  const std::size_t n = b.dim();
  if (cfg.U.size() != n) throw std::invalid_argument("potential field has the wrong number of components");
  SolitonReport rep;
  rep.name = soliton_name(cfg.rho, n);
  rep.half_lie = rat(Rational(1, 2)) * lie_derivative_metric(b.chart, cfg.U);
  rep.lhs = rep.half_lie + b.ricci;
  rep.div_U = divergence_of(b, cfg.U);
  if (psi) rep.structural_lambda = lambda_from_structure((*psi)[0], (*psi)[1], (*psi)[2], n, cfg.rho);
  const Expr r = simplify(b.scalar);

  if (cfg.lambda) {
    rep.lambda = NumericValue(*cfg.lambda);
    Expr c = simplify(rat(*cfg.lambda) + rat(cfg.rho) * r);
    rep.residual = check_zero(rep.lhs - c * b.metric, points, mode);
    if (rep.residual->passed()) {
      rep.classification = classify_lambda(*cfg.lambda);
    } else {
      rep.diagnostics.push_back("the soliton equation does not hold with the given lambda");
    }
    return rep;
  }

  std::vector<Expr> target, gcol;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      target.push_back(rep.lhs.at({i, j}));
      gcol.push_back(b.metric.at({i, j}));
      labels.push_back(index_label({i, j}));
    }
  }
  rep.combination = fit_linear({"lambda+rho*r"}, labels, target, {gcol}, points, mode);
  const auto& fit = *rep.combination;
  rep.separable = cfg.rho == 0 || r.is_constant();
  if (!fit.passed()) {
    rep.diagnostics.push_back("no multiple of g matches (1/2) L_U g + Ric; not a soliton for this U");
    return rep;
  }
  if (!rep.separable) {
    rep.diagnostics.push_back("lambda not separable: r is not constant, only lambda + rho r is observable");
    return rep;
  }
  if (!fit.point_independent) {
    rep.diagnostics.push_back("fitted lambda varies across points");
    return rep;
  }
  NumericValue c = fit.coefficients()[0];
  rep.lambda = c - NumericValue(cfg.rho) * (r.is_zero() ? NumericValue() : NumericValue(r.value()));
  rep.classification = classify_lambda(*rep.lambda);
  return rep;
}

Rational lambda_from_structure(const Rational& psi1, const Rational& psi2, const Rational& psi3, std::size_t n,
                               const Rational& rho) {
  const Rational nn(static_cast<long>(n));
  return Rational((1 - rho * nn) * psi1 + (1 - rho) * psi2 - rho * psi3);
}

Expr lambda_from_structure(const Expr& psi1, const Expr& psi2, const Expr& psi3, std::size_t n, const Rational& rho) {
  const Rational nn(static_cast<long>(n));
  return simplify(rat(Rational(1 - rho * nn)) * psi1 + rat(Rational(1 - rho)) * psi2 - rat(rho) * psi3);
}

std::vector<SpecializationRow> specialization_table(const Rational& psi1, const Rational& psi2, const Rational& psi3,
                                                    std::size_t n) {
  const auto nn = static_cast<long>(n);
  std::vector<SpecializationRow> rows;
  for (const auto& [name, rho] : std::vector<std::pair<std::string, Rational>>{
           {"Ricci", Rational(0)},
           {"Einstein", Rational(1, 2)},
           {"traceless Ricci", make_rational(1, nn)},
           {"Schouten", make_rational(1, 2 * (nn - 1))}}) {
    Rational lambda = lambda_from_structure(psi1, psi2, psi3, n, rho);
    rows.push_back({name, rho, lambda, classify_lambda(lambda)});
  }
  return rows;
}

ResidualCheck generator_acceleration_check(const CurvatureBundle& b, const MsqeStructure& s,
                                           std::span<const Point> points, EvalMode mode) {
  if (!s.psi) throw std::invalid_argument("acceleration check needs psi1..psi5");
  const std::size_t n = b.dim();
  TensorField nabla = covariant_derivative(vector_field(s.xi1), b.christoffel);  // [j][i] = nabla_i xi1^j
  std::vector<Expr> acc(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back(s.xi1[i] * nabla.at({j, i}));
    acc[j] = simplify(Expr::sum(std::move(terms)));
  }
  auto low = lower_index(vector_field(acc), b.metric);
  ResidualCheck out;
  out.symbolic_zero = true;
  for (std::size_t k = 0; k < n; ++k) {
    out.merge(check_zero(std::vector<Expr>{low.data()[k], Expr::integer(2) * (*s.psi)[3] * s.B[k]}, points, mode));
  }
  return out;
}

TorseFormingConsequences torse_forming_consequences(const CurvatureBundle& b, const MsqeStructure& s,
                                                    const RBSolitonConfig& cfg, std::span<const Point> points,
                                                    EvalMode mode) {
  if (!s.psi) throw std::invalid_argument("torse-forming consequences need psi1..psi5");
  const auto& psi = *s.psi;
  TorseFormingConsequences out;
  out.xi1_class = classify_vector_field(b, s.xi1, points, mode);
  if (!out.xi1_class.is_torse_forming()) {
    out.diagnostics.push_back("xi1 is not torse-forming; precondition unmet");
    return out;
  }
  out.applicable = true;
  out.geodesic = out.xi1_class.geodesic;
  out.psi4_zero = check_zero(psi[3], points, mode);
  if (!out.psi4_zero.passed()) out.diagnostics.push_back("psi4 does not vanish; hypothesis violated");

  const Expr e1 = Expr::integer(s.eps1), e2 = Expr::integer(s.eps2);
  Expr d22 = apply2(s.D, s.xi2, s.xi2);
  out.predicted_f = simplify(e1 * psi[1] - e2 * psi[2] - e2 * psi[4] * d22);
  std::vector<std::pair<NumericValue, double>> gaps;
  for (const auto& pf : out.xi1_class.torse_forming.points) {
    try {
      NumericValue pred = evaluate(out.predicted_f, pf.point, mode);
      NumericValue gap = pf.coefficients[0] - pred;
      gaps.emplace_back(gap, std::max(std::fabs(pred.to_double()), std::fabs(pf.coefficients[0].to_double())));
      if (out.f_gap < gap.abs()) out.f_gap = gap.abs();
    } catch (const EvaluationError&) {
    }
  }
  out.f_matches = pointwise(gaps, kFloatTolerance).passed();
  if (!out.f_matches) out.diagnostics.push_back("fitted f differs from eps1 psi2 - eps2 psi3 - eps2 psi5 D(xi2,xi2)");

  if (cfg.lambda) {
    std::vector<Expr> terms{psi[0], e1 * psi[1], -rat(*cfg.lambda), -(rat(cfg.rho) * b.scalar)};
    out.lambda_relation = check_zero(terms, points, mode);
  }
  out.eigen = eigenvector_check(b, s.D, s.xi2, points, mode);
  return out;
}

ConharmonicFlatConsequences conharmonic_flat_consequences(const CurvatureBundle& b, const RBSolitonConfig& cfg,
                                                          std::span<const Point> points, EvalMode mode,
                                                          const std::optional<std::array<Expr, 5>>& psi) {
  const std::size_t n = b.dim();
  ConharmonicFlatConsequences out;
  out.conharmonic_zero = check_zero(conharmonic_tensor(b), points, mode);
  if (!out.conharmonic_zero.passed()) {
    out.diagnostics.push_back("conharmonic tensor does not vanish; consequences not applicable");
    return out;
  }
  out.applicable = true;
  out.scalar_zero = check_zero(b.scalar, points, mode);
  if (psi) {
    out.psi_trace = check_zero(std::vector<Expr>{Expr::integer(static_cast<long>(n)) * (*psi)[0], (*psi)[1], (*psi)[2]},
                               points, mode);
  }
  out.div_U = divergence_of(b, cfg.U);
  if (cfg.lambda) {
    out.lambda = NumericValue(*cfg.lambda);
  } else {
    auto rep = soliton_residual(b, cfg, points, mode);
    out.lambda = rep.lambda;
    for (auto& d : rep.diagnostics) out.diagnostics.push_back(std::move(d));
  }
  if (out.lambda) {
    out.classification = classify_lambda(*out.lambda);
    Expr nl = out.lambda->is_exact() ? rat(Rational(static_cast<long>(n) * out.lambda->exact())) : Expr();
    if (out.lambda->is_exact()) {
      out.divergence_relation = check_zero(std::vector<Expr>{out.div_U, -nl}, points, mode);
    } else {
      // Float lambda: compare pointwise.
      std::vector<std::pair<NumericValue, double>> vals;
      NumericValue target = NumericValue(static_cast<double>(n)) * *out.lambda;
      for (const auto& p : points) {
        try {
          NumericValue d = out.div_U.is_zero() ? NumericValue() : evaluate(out.div_U, p, mode);
          vals.emplace_back(d - target, std::fabs(target.to_double()));
        } catch (const EvaluationError&) {
        }
      }
      out.divergence_relation = pointwise(vals, kFloatTolerance);
    }
    bool steady = out.classification == SolitonClass::Steady;
    bool div_free = check_zero(out.div_U, points, mode).passed();
    out.steady_iff_divergence_free = steady == div_free;
  }
  return out;
}

} // namespace curvlab
