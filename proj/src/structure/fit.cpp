#include "curvlab/structure/fit.hpp"

#include "curvlab/expr/simplify.hpp"

#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

NumericValue zero_for(EvalMode mode) { return mode == EvalMode::Float ? NumericValue(0.0) : NumericValue(); }

NumericValue eval_or_zero(const Expr& e, const Point& p, EvalMode mode) {
  return e.is_zero() ? zero_for(mode) : evaluate(e, p, mode);
}

bool close(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  double x = a.to_double(), y = b.to_double();
  return std::fabs(x - y) <= kPointIndependenceTolerance * std::max({1.0, std::fabs(x), std::fabs(y)});
}

Expr sum_of(std::vector<Expr> terms) {
  std::erase_if(terms, [](const Expr& e) { return e.is_zero(); });
  return simplify(Expr::sum(std::move(terms)));
}

TensorField outer_sym(const std::vector<Expr>& a, const std::vector<Expr>& b, bool symmetrize) {
  const std::size_t n = a.size();
  TensorField t(n, 0, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr v = a[i] * b[j];
      if (symmetrize) v = v + b[i] * a[j];
      t.at({i, j}) = simplify(v);
    }
  }
  return t;
}

} // namespace

std::string index_label(std::initializer_list<std::size_t> idx) {
  std::string s;
  for (auto i : idx) s += std::to_string(i + 1);
  return s;
}

bool FitResult::passed() const {
  if (points.empty()) return false;
  if (exact) return max_residual.is_zero();
  return max_relative <= tolerance;
}

std::string FitResult::verdict() const {
  if (!passed()) return "fails";
  return exact ? "exact" : "approximate";
}

std::vector<NumericValue> FitResult::coefficients() const {
  return points.empty() ? std::vector<NumericValue>{} : points.front().coefficients;
}

FitResult fit_linear(std::vector<std::string> names, std::vector<std::string> row_labels,
                     const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& regressors,
                     std::span<const Point> points, EvalMode mode, double tolerance) {
  const std::size_t rows = target.size();
  const std::size_t cols = regressors.size();
  if (names.size() != cols) throw std::invalid_argument("one name per regressor");
  for (const auto& col : regressors) {
    if (col.size() != rows) throw std::invalid_argument("regressor length differs from target");
  }
  FitResult out;
  out.names = std::move(names);
  out.row_labels = std::move(row_labels);
  out.tolerance = tolerance;
  out.rank = cols;
  out.row_max.assign(rows, NumericValue());
  double sum_sq = 0.0;
  std::size_t count = 0;

  for (const auto& p : points) {
    NumericMatrix A(rows, std::vector<NumericValue>(cols));
    std::vector<NumericValue> rhs(rows);
    try {
      for (std::size_t r = 0; r < rows; ++r) {
        rhs[r] = eval_or_zero(target[r], p, mode);
        for (std::size_t c = 0; c < cols; ++c) A[r][c] = eval_or_zero(regressors[c][r], p, mode);
      }
    } catch (const EvaluationError&) {
      ++out.points_skipped;
      continue;
    }
    auto ls = least_squares(A, rhs);
    PointFit pf{p, ls.solution, ls.residual, ls.rank, ls.null_space, ls.exact};
    double scale = 1.0;
    for (const auto& v : rhs) scale = std::max(scale, std::fabs(v.to_double()));
    for (std::size_t r = 0; r < rows; ++r) {
      NumericValue a = pf.residual[r].abs();
      if (out.row_max[r] < a) out.row_max[r] = a;
      if (out.max_residual < a) out.max_residual = a;
      double d = a.to_double();
      sum_sq += d * d;
      ++count;
      if (!a.is_exact()) out.max_relative = std::max(out.max_relative, d / scale);
    }
    out.exact = out.exact && ls.exact;
    if (ls.rank < out.rank) {
      out.rank = ls.rank;
      if (out.null_space.empty()) out.null_space = ls.null_space;
    }
    if (!out.points.empty()) {
      const auto& first = out.points.front().coefficients;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!close(first[c], pf.coefficients[c])) out.point_independent = false;
      }
    }
    out.points.push_back(std::move(pf));
  }
  out.rms_residual = count == 0 ? 0.0 : std::sqrt(sum_sq / static_cast<double>(count));
  if (out.points.empty()) out.warnings.push_back("no sample point could be evaluated");
  if (out.rank_deficient()) out.warnings.push_back("regressors are linearly dependent; minimum-norm coefficients");
  return out;
}

TraceAudit trace_audit(const CurvatureBundle& b, const MsqeStructure& s, std::span<const Point> points,
                       EvalMode mode) {
  if (!s.psi) throw std::invalid_argument("trace audit needs psi1..psi5");
  const auto& psi = *s.psi;
  const auto n = static_cast<long>(b.dim());
  const Expr& r = b.scalar;
  Expr trD = metric_trace(s.D, b.inverse);
  TraceAudit t;
  t.riemannian = simplify(r - Expr::integer(n) * psi[0] - psi[1] - psi[2]);
  t.signature_aware = simplify(r - Expr::integer(n) * psi[0] - Expr::integer(s.eps1) * psi[1] -
                               Expr::integer(s.eps2) * psi[2] - psi[4] * trD);
  t.lorentzian = simplify(r - Expr::integer(4) * psi[0] + psi[1] - psi[2]);
  t.riemannian_check = check_zero(t.riemannian, points, mode);
  t.signature_check = check_zero(t.signature_aware, points, mode);
  t.lorentzian_check = check_zero(t.lorentzian, points, mode);
  return t;
}

MsqeFit fit_msqe(const CurvatureBundle& b, const MsqeStructure& s, std::span<const Point> points, EvalMode mode) {
  const std::size_t n = b.dim();
  std::array<TensorField, 5> reg{b.metric, outer_sym(s.A, s.A, false), outer_sym(s.B, s.B, false),
                                 outer_sym(s.A, s.B, true), s.D};
  std::vector<Expr> target;
  std::vector<std::vector<Expr>> cols(5);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      target.push_back(b.ricci.at({i, j}));
      for (std::size_t c = 0; c < 5; ++c) cols[c].push_back(reg[c].at({i, j}));
      labels.push_back(index_label({i, j}));
    }
  }
  MsqeFit out;
  out.fit = fit_linear({"psi1", "psi2", "psi3", "psi4", "psi5"}, labels, target, cols, points, mode);
  if (s.psi) {
    TensorField model = msqe_ricci(s, b.metric);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        std::vector<Expr> terms{b.ricci.at({i, j}), -model.at({i, j})};
        out.pinned.push_back({index_label({i, j}), sum_of(terms), check_zero(terms, points, mode)});
      }
    }
    out.trace = trace_audit(b, s, points, mode);
    for (std::size_t k = 1; k < 5; ++k) {
      if (simplify((*s.psi)[k]).is_zero()) {
        out.fit.warnings.push_back("psi" + std::to_string(k + 1) + " vanishes identically");
      }
    }
  }
  return out;
}

std::array<TensorField, 5> quasi_constant_blocks(const TensorField& metric, const MsqeStructure& s) {
  return {g_tensor(metric), kulkarni_wedge(metric, outer_sym(s.A, s.A, false)),
          kulkarni_wedge(metric, outer_sym(s.B, s.B, false)), kulkarni_wedge(metric, outer_sym(s.A, s.B, true)),
          kulkarni_wedge(metric, s.D)};
}

QuasiConstantReport check_quasi_constant_curvature(const CurvatureBundle& b, const MsqeStructure& s,
                                                   const std::optional<PhysicsConfig>& physics,
                                                   std::span<const Point> points, EvalMode mode) {
  const std::size_t n = b.dim();
  auto blocks = quasi_constant_blocks(b.metric, s);
  std::vector<Expr> target;
  std::vector<std::vector<Expr>> cols(5);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          if (k < i || (k == i && l < j)) continue;  // pair symmetry
          target.push_back(b.riemann.at({i, j, k, l}));
          for (std::size_t c = 0; c < 5; ++c) cols[c].push_back(blocks[c].at({i, j, k, l}));
          labels.push_back(index_label({i, j, k, l}));
        }
      }
    }
  }
  QuasiConstantReport out;
  out.fit = fit_linear({"f1", "f2", "f3", "f4", "f5"}, labels, target, cols, points, mode);
  if (!physics) return out;
  TensorField T = energy_momentum(b, *physics);
  out.space_matter_zero = check_zero(space_matter(b, T, *physics), points, mode);
  if (!s.psi) return out;
  const auto& psi = *s.psi;
  const Expr half = Expr::constant(Rational(1, 2));
  std::array<Expr, 5> f{simplify(half * b.scalar - psi[0] + physics->sigma), simplify(-(half * psi[1])),
                        simplify(-(half * psi[2])), simplify(-(half * psi[3])), simplify(-(half * psi[4]))};
  out.predicted = f;
  TensorField residual(n, 0, 4);
  for (std::size_t k = 0; k < residual.size(); ++k) {
    std::vector<Expr> terms{b.riemann.data()[k]};
    for (std::size_t c = 0; c < 5; ++c) terms.push_back(-(f[c] * blocks[c].data()[k]));
    residual.data()[k] = sum_of(std::move(terms));
  }
  out.predicted_residual = check_zero(residual, points, mode);
  out.coefficient_gap.assign(5, NumericValue());
  for (const auto& pf : out.fit.points) {
    for (std::size_t c = 0; c < 5; ++c) {
      try {
        NumericValue gap = (pf.coefficients[c] - eval_or_zero(f[c], pf.point, mode)).abs();
        if (out.coefficient_gap[c] < gap) out.coefficient_gap[c] = gap;
      } catch (const EvaluationError&) {
      }
    }
  }
  return out;
}

std::string to_string(RecurrenceClass c) {
  switch (c) {
    case RecurrenceClass::RicciSymmetric: return "Ricci-symmetric";
    case RecurrenceClass::RicciRecurrent: return "Ricci recurrent";
    case RecurrenceClass::GeneralizedRicciRecurrent: return "generalized Ricci recurrent";
    case RecurrenceClass::Neither: return "not recurrent";
  }
  return "unknown";
}

RecurrenceReport fit_ricci_recurrence(const TensorField& ric, const TensorField& metric, const TensorField& gamma,
                                      std::span<const Point> points, EvalMode mode) {
  const std::size_t n = metric.dim();
  TensorField nabla = covariant_derivative(ric, gamma);
  RecurrenceReport out;
  out.nabla_ric_zero = check_zero(nabla, points, mode);

  std::vector<Expr> target;
  std::vector<std::vector<Expr>> cols(2 * n);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        target.push_back(nabla.at({k, i, j}));
        for (std::size_t m = 0; m < n; ++m) {
          cols[m].push_back(m == k ? ric.at({i, j}) : Expr());
          cols[n + m].push_back(m == k ? metric.at({i, j}) : Expr());
        }
        labels.push_back(index_label({k}) + ";" + index_label({i, j}));
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t m = 0; m < n; ++m) names.push_back("gamma" + std::to_string(m + 1));
  for (std::size_t m = 0; m < n; ++m) names.push_back("delta" + std::to_string(m + 1));
  out.generalized = fit_linear(names, labels, target, cols, points, mode);
  out.recurrent = fit_linear(std::vector<std::string>(names.begin(), names.begin() + static_cast<long>(n)), labels,
                             target, std::vector<std::vector<Expr>>(cols.begin(), cols.begin() + static_cast<long>(n)),
                             points, mode);
  out.degenerate = out.generalized.rank_deficient();
  if (out.nabla_ric_zero.passed()) {
    out.classification = RecurrenceClass::RicciSymmetric;
  } else if (out.recurrent.passed()) {
    out.classification = RecurrenceClass::RicciRecurrent;
  } else if (out.generalized.passed()) {
    out.classification = RecurrenceClass::GeneralizedRicciRecurrent;
  }
  return out;
}

RecurrenceReport fit_ricci_recurrence(const CurvatureBundle& b, std::span<const Point> points, EvalMode mode) {
  return fit_ricci_recurrence(b.ricci, b.metric, b.christoffel, points, mode);
}

} // namespace curvlab
