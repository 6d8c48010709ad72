#include "curvlab/derived/derived.hpp"

#include "curvlab/expr/simplify.hpp"

#include <stdexcept>

namespace curvlab {

namespace {

Expr sum_of(std::vector<Expr> terms) {
  std::erase_if(terms, [](const Expr& e) { return e.is_zero(); });
  return simplify(Expr::sum(std::move(terms)));
}

Expr q(long a, long b = 1) { return Expr::constant(make_rational(a, b)); }

// Shared core of the conformal and conharmonic tensors.
TensorField ricci_corrected(const CurvatureBundle& b, bool with_scalar) {
  const auto n = static_cast<long>(b.dim());
  const auto& g = b.metric;
  const auto& ric = b.ricci;
  TensorField out(b.dim(), 0, 4);
  out.antisymmetric = {{0, 1}, {2, 3}};
  const Expr inv = q(1, n - 2);
  const Expr scal = with_scalar ? simplify(b.scalar * q(1, (n - 1) * (n - 2))) : Expr();
  for_each_index(b.dim(), 4, [&](std::span<const std::size_t> x) {
    const auto i = x[0], j = x[1], k = x[2], l = x[3];
    std::vector<Expr> terms{b.riemann[x]};
    Expr mix = Expr::sum({ric.at({j, k}) * g.at({i, l}), -(ric.at({i, k}) * g.at({j, l})),
                          g.at({j, k}) * ric.at({i, l}), -(g.at({i, k}) * ric.at({j, l}))});
    terms.push_back(-(inv * mix));
    if (!scal.is_zero()) {
      terms.push_back(scal * (g.at({j, k}) * g.at({i, l}) - g.at({i, k}) * g.at({j, l})));
    }
    out[x] = sum_of(std::move(terms));
  });
  return out;
}

} // namespace

TensorField conformal_tensor(const CurvatureBundle& b) {
  if (b.dim() < 4) throw std::invalid_argument("conformal tensor needs dimension >= 4");
  return ricci_corrected(b, true);
}

TensorField conharmonic_tensor(const CurvatureBundle& b) {
  if (b.dim() < 3) throw std::invalid_argument("conharmonic tensor needs dimension >= 3");
  return ricci_corrected(b, false);
}

TensorField g_tensor(const TensorField& g) {
  TensorField out(g.dim(), 0, 4);
  out.antisymmetric = {{0, 1}, {2, 3}};
  for_each_index(g.dim(), 4, [&](std::span<const std::size_t> x) {
    out[x] = simplify(g.at({x[0], x[3]}) * g.at({x[1], x[2]}) - g.at({x[0], x[2]}) * g.at({x[1], x[3]}));
  });
  return out;
}

TensorField concircular_tensor(const CurvatureBundle& b) {
  const auto n = static_cast<long>(b.dim());
  Expr c = simplify(b.scalar * q(1, n * (n - 1)));
  if (c.is_zero()) return b.riemann;
  return b.riemann - c * g_tensor(b.metric);
}

TensorField kulkarni_wedge(const TensorField& g, const TensorField& T) {
  const std::size_t n = g.dim();
  if (T.dim() != n || T.lower() != 2 || T.upper() != 0) throw std::invalid_argument("wedge needs a (0,2) tensor");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!simplify(T.at({i, j}) - T.at({j, i})).is_zero()) {
        throw std::invalid_argument("wedge needs a symmetric tensor");
      }
    }
  }
  TensorField out(n, 0, 4);
  out.antisymmetric = {{0, 1}, {2, 3}};
  for_each_index(n, 4, [&](std::span<const std::size_t> x) {
    const auto i = x[0], j = x[1], k = x[2], l = x[3];
    out[x] = sum_of({g.at({i, l}) * T.at({j, k}), g.at({j, k}) * T.at({i, l}), -(g.at({i, k}) * T.at({j, l})),
                     -(g.at({j, l}) * T.at({i, k}))});
  });
  return out;
}

TensorField energy_momentum(const CurvatureBundle& b, const PhysicsConfig& cfg) {
  if (cfg.kappa == 0) throw std::invalid_argument("gravitational constant must be nonzero");
  Expr inv_kappa = Expr::constant(Rational(1 / cfg.kappa));
  Expr half_r = simplify(q(1, 2) * b.scalar);
  TensorField T(b.dim(), 0, 2);
  T.symmetric.emplace_back(0, 1);
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      T.at({i, j}) = simplify(inv_kappa * (b.ricci.at({i, j}) - half_r * b.metric.at({i, j})));
    }
  }
  return T;
}

TensorField space_matter(const CurvatureBundle& b, const TensorField& T, const PhysicsConfig& cfg) {
  TensorField wedge = kulkarni_wedge(b.metric, T);
  TensorField G = g_tensor(b.metric);
  Expr half_kappa = Expr::constant(Rational(cfg.kappa / 2));
  TensorField out(b.dim(), 0, 4);
  out.antisymmetric = {{0, 1}, {2, 3}};
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] = sum_of({b.riemann.data()[k], half_kappa * wedge.data()[k], -(cfg.sigma * G.data()[k])});
  }
  return out;
}

TensorField divergence(const TensorField& t, const CurvatureBundle& b) {
  if (t.upper() != 0 || (t.lower() != 3 && t.lower() != 4)) {
    throw std::invalid_argument("divergence expects a (0,3) or (0,4) tensor");
  }
  TensorField nabla = covariant_derivative(t, b.christoffel);
  return contract(nabla, 0, nabla.rank() - 1, b.inverse);
}

TensorField ricci_curl(const CurvatureBundle& b) {
  TensorField nabla = covariant_derivative(b.ricci, b.christoffel);
  TensorField out(b.dim(), 0, 3);
  for_each_index(b.dim(), 3, [&](std::span<const std::size_t> x) {
    out[x] = simplify(nabla.at({x[0], x[1], x[2]}) - nabla.at({x[1], x[0], x[2]}));
  });
  return out;
}

TensorField gradient(const Expr& f, std::size_t dim) {
  TensorField out(dim, 0, 1);
  for (std::size_t i = 0; i < dim; ++i) out.at({i}) = differentiate(f, i);
  return out;
}

TensorField space_matter_divergence_efe(const CurvatureBundle& b, const PhysicsConfig& cfg) {
  TensorField curl = ricci_curl(b);
  TensorField dr = gradient(b.scalar, b.dim());
  TensorField ds = gradient(cfg.sigma, b.dim());
  TensorField out(b.dim(), 0, 3);
  for_each_index(b.dim(), 3, [&](std::span<const std::size_t> x) {
    const auto i = x[0], j = x[1], k = x[2];
    Expr xi = q(1, 4) * dr.at({i}) + ds.at({i});
    Expr yj = q(1, 4) * dr.at({j}) + ds.at({j});
    out[x] = sum_of({q(3, 2) * curl[x], -(b.metric.at({j, k}) * xi), b.metric.at({i, k}) * yj});
  });
  return out;
}

TensorField curvature_action_on_ricci(const TensorField& C, const CurvatureBundle& b) {
  const std::size_t n = b.dim();
  // Ricci operator applied to the last slot: S_xyz^m = g^{mw} C_xyzw, then Ric_m.
  TensorField CR(n, 0, 4);  // CR[x][y][z][v] = Ric(C(X,Y)Z, V)
  for_each_index(n, 4, [&](std::span<const std::size_t> x) {
    std::vector<Expr> terms;
    for (std::size_t m = 0; m < n; ++m) {
      if (b.ricci.at({m, x[3]}).is_zero()) continue;
      for (std::size_t w = 0; w < n; ++w) {
        const Expr& gi = b.inverse.at({m, w});
        const Expr& c = C.at({x[0], x[1], x[2], w});
        if (gi.is_zero() || c.is_zero()) continue;
        terms.push_back(gi * c * b.ricci.at({m, x[3]}));
      }
    }
    CR[x] = sum_of(std::move(terms));
  });
  TensorField out(n, 0, 4);
  for_each_index(n, 4, [&](std::span<const std::size_t> x) {
    out[x] = sum_of({CR[x], CR.at({x[0], x[1], x[3], x[2]})});
  });
  return out;
}

TensorField tachibana(const CurvatureBundle& b) {
  const auto& g = b.metric;
  const auto& ric = b.ricci;
  TensorField out(b.dim(), 0, 4);
  for_each_index(b.dim(), 4, [&](std::span<const std::size_t> idx) {
    const auto X = idx[0], Y = idx[1], Z = idx[2], W = idx[3];
    out[idx] = sum_of({g.at({Y, Z}) * ric.at({X, W}), -(g.at({X, Z}) * ric.at({Y, W})),
                       g.at({Y, W}) * ric.at({X, Z}), -(g.at({X, W}) * ric.at({Y, Z}))});
  });
  return out;
}

std::vector<NumericValue> evaluate_all(const TensorField& t, const Point& p, EvalMode mode) {
  std::vector<NumericValue> out;
  out.reserve(t.size());
  for (const auto& c : t.data()) {
    out.push_back(c.is_zero() ? (mode == EvalMode::Float ? NumericValue(0.0) : NumericValue()) : evaluate(c, p, mode));
  }
  return out;
}

PseudosymmetryReport pseudosymmetry_analysis(const CurvatureBundle& b, const MsqeStructure& s,
                                             std::span<const Point> points, EvalMode mode) {
  if (!s.psi) throw std::invalid_argument("pseudosymmetry analysis needs the scalars psi1..psi5");
  const auto& psi = *s.psi;
  if (simplify(psi[4]).is_zero()) throw std::invalid_argument("psi5 vanishes identically; m is undefined");
  const std::size_t n = b.dim();
  PseudosymmetryReport rep;
  if (simplify(psi[3]).is_zero()) rep.warnings.push_back("psi4 vanishes identically");

  TensorField C = conformal_tensor(b);
  TensorField lhs = curvature_action_on_ricci(C, b);
  TensorField Q = tachibana(b);
  for (const auto& p : points) {
    PseudosymmetryPoint pt;
    pt.point = p;
    try {
      auto L = evaluate_all(lhs, p, mode);
      auto Qv = evaluate_all(Q, p, mode);
      NumericValue lq, qq;
      for (std::size_t k = 0; k < L.size(); ++k) {
        lq += L[k] * Qv[k];
        qq += Qv[k] * Qv[k];
      }
      NumericValue F;
      if (qq.is_zero()) {
        pt.f_ric.reset();
      } else {
        F = lq / qq;
        pt.f_ric = F;
      }
      for (std::size_t k = 0; k < L.size(); ++k) {
        NumericValue r = (L[k] - F * Qv[k]).abs();
        if (pt.residual < r) pt.residual = r;
      }
    } catch (const EvaluationError&) {
      rep.warnings.push_back("point " + to_string(p) + " skipped: evaluation failed");
      continue;
    }
    rep.points.push_back(std::move(pt));
  }

  auto R4 = [&](const std::vector<Expr>& X, const std::vector<Expr>& Y, const std::vector<Expr>& Z,
                const std::vector<Expr>& W) {
    std::vector<Expr> terms;
    for_each_index(n, 4, [&](std::span<const std::size_t> x) {
      const Expr& r = b.riemann[x];
      if (r.is_zero() || X[x[0]].is_zero() || Y[x[1]].is_zero() || Z[x[2]].is_zero() || W[x[3]].is_zero()) return;
      terms.push_back(r * X[x[0]] * Y[x[1]] * Z[x[2]] * W[x[3]]);
    });
    return sum_of(std::move(terms));
  };
  const Expr nm2 = q(static_cast<long>(n) - 2);
  Expr r2112 = R4(s.xi2, s.xi1, s.xi1, s.xi2);
  Expr d22 = apply2(s.D, s.xi2, s.xi2);
  rep.m = simplify(-(r2112 * nm2) / psi[4] + d22);
  Expr coef = simplify(r2112 - psi[4] * d22 / nm2);
  std::vector<Expr> dxi2(n);  // D(X, xi2)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (!s.D.at({i, j}).is_zero() && !s.xi2[j].is_zero()) terms.push_back(s.D.at({i, j}) * s.xi2[j]);
    }
    dxi2[i] = sum_of(std::move(terms));
  }
  rep.E.resize(n);
  std::vector<Expr> gxi2 = lower_index(vector_field(s.xi2), b.metric).data();
  for (std::size_t i = 0; i < n; ++i) {
    rep.E[i] = simplify(coef * s.B[i] + psi[4] * dxi2[i] / nm2);
  }
  rep.theta = raise_index(covector(rep.E), b.inverse).data();

  std::vector<Expr> theta_low = lower_index(vector_field(rep.theta), b.metric).data();
  rep.eigen_residual.symbolic_zero = true;
  rep.duality_residual.symbolic_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    rep.eigen_residual.merge(check_zero(std::vector<Expr>{dxi2[i], -(rep.m * gxi2[i])}, points, mode));
    rep.duality_residual.merge(check_zero(std::vector<Expr>{rep.E[i], -theta_low[i]}, points, mode));
  }
  rep.eigenvalue_case = rep.eigen_residual.passed();

  // R(X,Y,xi1,xi2) over the coordinate basis.
  rep.identity_residual.symbolic_zero = true;
  rep.vanishing_residual.symbolic_zero = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const Expr& r = b.riemann.at({x, y, k, l});
          if (r.is_zero() || s.xi1[k].is_zero() || s.xi2[l].is_zero()) continue;
          terms.push_back(r * s.xi1[k] * s.xi2[l]);
        }
      }
      Expr rxy = sum_of(std::move(terms));
      rep.vanishing_residual.merge(check_zero(rxy, points, mode));
      rep.identity_residual.merge(check_zero(
          std::vector<Expr>{rxy, -(rep.E[x] * s.A[y]), rep.E[y] * s.A[x]}, points, mode));
    }
  }
  return rep;
}

} // namespace curvlab
