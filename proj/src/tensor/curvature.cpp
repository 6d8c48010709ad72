#include "curvlab/tensor/curvature.hpp"

#include "curvlab/expr/evaluate.hpp"
#include "curvlab/expr/simplify.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace curvlab {

namespace {

Expr sum_of(std::vector<Expr> terms) {
  std::erase_if(terms, [](const Expr& e) { return e.is_zero(); });
  return simplify(Expr::sum(std::move(terms)));
}

Expr determinant(const ExprMatrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  if (n == 2) return simplify(a[0][0] * a[1][1] - a[0][1] * a[1][0]);
  std::vector<Expr> terms;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    ExprMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(a[r][k]);
      }
      minor.push_back(std::move(row));
    }
    Expr term = a[0][c] * determinant(minor);
    terms.push_back(c % 2 ? -term : term);
  }
  return sum_of(std::move(terms));
}

Expr cofactor(const ExprMatrix& a, std::size_t r, std::size_t c) {
  const std::size_t n = a.size();
  if (n == 1) return Expr::integer(1);
  ExprMatrix minor;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == r) continue;
    std::vector<Expr> row;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != c) row.push_back(a[i][k]);
    }
    minor.push_back(std::move(row));
  }
  Expr d = determinant(minor);
  return (r + c) % 2 ? simplify(-d) : d;
}

// Groups coordinates into blocks coupled by nonzero off-diagonal entries.
std::vector<std::vector<std::size_t>> metric_blocks(const ChartManifold& m) {
  const std::size_t n = m.dimension();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!m.g(i, j).is_zero()) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return blocks;
}

// d_l g_ij, indexed [l][i][j].
std::vector<ExprMatrix> metric_derivatives(const ChartManifold& m) {
  const std::size_t n = m.dimension();
  std::vector<ExprMatrix> dg(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) dg[l][i][j] = dg[l][j][i] = differentiate(m.g(i, j), l);
    }
  }
  return dg;
}

} // namespace

TensorField inverse_metric(const ChartManifold& m) {
  const std::size_t n = m.dimension();
  TensorField inv(n, 2, 0);
  inv.symmetric.emplace_back(0, 1);
  for (const auto& block : metric_blocks(m)) {
    const std::size_t k = block.size();
    ExprMatrix a(k, std::vector<Expr>(k));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) a[r][c] = m.g(block[r], block[c]);
    }
    Expr det = determinant(a);
    if (det.is_zero()) throw SingularMetricError("metric determinant is identically zero");
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c <= r; ++c) {
        // Adjugate is the transpose of the cofactor matrix; symmetric here.
        Expr v = simplify(cofactor(a, c, r) / det);
        inv.at({block[r], block[c]}) = v;
        inv.at({block[c], block[r]}) = v;
      }
    }
  }
  return inv;
}

TensorField christoffel(const ChartManifold& m, const TensorField& inverse) {
  const std::size_t n = m.dimension();
  auto dg = metric_derivatives(m);
  TensorField gamma(n, 1, 2);
  gamma.symmetric.emplace_back(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      // First-kind symbols [ij,l].
      std::vector<Expr> first(n);
      for (std::size_t l = 0; l < n; ++l) first[l] = sum_of({dg[i][j][l], dg[j][i][l], -dg[l][i][j]});
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Expr> terms;
        for (std::size_t l = 0; l < n; ++l) {
          const Expr& ginv = inverse.at({k, l});
          if (ginv.is_zero() || first[l].is_zero()) continue;
          terms.push_back(ginv * first[l]);
        }
        Expr v = simplify(Expr::constant(Rational(1, 2)) * Expr::sum(std::move(terms)));
        gamma.at({k, i, j}) = v;
        gamma.at({k, j, i}) = v;
      }
    }
  }
  return gamma;
}

TensorField riemann(const ChartManifold& m, const TensorField& gamma, TensorField& lowered) {
  const std::size_t n = m.dimension();
  const Expr sigma = Expr::integer(m.convention().ricci_sign);
  // d_i Gamma^l_jk, indexed [i][offset of (l,j,k)].
  std::vector<std::vector<Expr>> dgamma(n, std::vector<Expr>(gamma.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < gamma.size(); ++c) {
      if (!gamma.data()[c].is_zero()) dgamma[i][c] = differentiate(gamma.data()[c], i);
    }
  }
  TensorField up(n, 1, 3);
  up.antisymmetric.emplace_back(1, 2);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          std::vector<Expr> terms{dgamma[i][gamma.offset(std::array{l, j, k})],
                                  -dgamma[j][gamma.offset(std::array{l, i, k})]};
          for (std::size_t s = 0; s < n; ++s) {
            const Expr& a = gamma.at({l, i, s});
            const Expr& b = gamma.at({s, j, k});
            if (!a.is_zero() && !b.is_zero()) terms.push_back(a * b);
            const Expr& c = gamma.at({l, j, s});
            const Expr& d = gamma.at({s, i, k});
            if (!c.is_zero() && !d.is_zero()) terms.push_back(-(c * d));
          }
          Expr v = sum_of(std::move(terms));
          if (!v.is_zero()) v = simplify(sigma * v);
          up.at({l, i, j, k}) = v;
          up.at({l, j, i, k}) = v.is_zero() ? v : simplify(-v);
        }
      }
    }
  }
  lowered = TensorField(n, 0, 4);
  lowered.antisymmetric = {{0, 1}, {2, 3}};
  for_each_index(n, 4, [&](std::span<const std::size_t> idx) {
    std::vector<Expr> terms;
    for (std::size_t s = 0; s < n; ++s) {
      const Expr& g = m.g(idx[3], s);
      const Expr& r = up.at({s, idx[0], idx[1], idx[2]});
      if (!g.is_zero() && !r.is_zero()) terms.push_back(g * r);
    }
    lowered[idx] = sum_of(std::move(terms));
  });
  return up;
}

void ricci_and_scalar(const TensorField& riemann_up, const TensorField& inverse, TensorField& ricci,
                      Expr& scalar) {
  const std::size_t n = riemann_up.dim();
  ricci = TensorField(n, 0, 2);
  ricci.symmetric.emplace_back(0, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < n; ++i) terms.push_back(riemann_up.at({i, i, j, k}));
      ricci.at({j, k}) = sum_of(std::move(terms));
    }
  }
  scalar = metric_trace(ricci, inverse);
}

CurvatureBundle compute_curvature(const ChartManifold& m) {
  CurvatureBundle b{m, covariant2(m.metric()), {}, {}, {}, {}, {}, {}};
  b.metric.symmetric.emplace_back(0, 1);
  b.inverse = inverse_metric(m);
  b.christoffel = christoffel(m, b.inverse);
  b.riemann_up = riemann(m, b.christoffel, b.riemann);
  ricci_and_scalar(b.riemann_up, b.inverse, b.ricci, b.scalar);
  return b;
}

TensorField covariant_derivative(const TensorField& t, const TensorField& gamma) {
  const std::size_t n = t.dim();
  const int p = t.upper();
  const int q = t.lower();
  TensorField out(n, p, q + 1);
  std::vector<std::vector<Expr>> partial(n, std::vector<Expr>(t.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (!t.data()[c].is_zero()) partial[i][c] = differentiate(t.data()[c], i);
    }
  }
  std::vector<std::size_t> src(static_cast<std::size_t>(p + q));
  for_each_index(n, p + q + 1, [&](std::span<const std::size_t> idx) {
    const std::size_t i = idx[static_cast<std::size_t>(p)];
    for (int s = 0; s < p; ++s) src[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(s)];
    for (int s = 0; s < q; ++s) src[static_cast<std::size_t>(p + s)] = idx[static_cast<std::size_t>(p + 1 + s)];
    std::vector<Expr> terms{partial[i][t.offset(src)]};
    for (int s = 0; s < p + q; ++s) {
      const auto slot = static_cast<std::size_t>(s);
      const std::size_t keep = src[slot];
      for (std::size_t m = 0; m < n; ++m) {
        const Expr& g = s < p ? gamma.at({keep, i, m}) : gamma.at({m, i, keep});
        if (g.is_zero()) continue;
        src[slot] = m;
        const Expr& c = t[src];
        src[slot] = keep;
        if (c.is_zero()) continue;
        terms.push_back(s < p ? g * c : -(g * c));
      }
    }
    out[idx] = sum_of(std::move(terms));
  });
  return out;
}

TensorField lie_derivative_metric(const ChartManifold& m, const std::vector<Expr>& U) {
  const std::size_t n = m.dimension();
  if (U.size() != n) throw std::invalid_argument("vector field has the wrong number of components");
  std::vector<std::vector<Expr>> dU(n, std::vector<Expr>(n));  // [i][k] = d_i U^k
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) dU[i][k] = differentiate(U[k], i);
  }
  TensorField out(n, 0, 2);
  out.symmetric.emplace_back(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < n; ++k) {
        if (!U[k].is_zero()) terms.push_back(U[k] * differentiate(m.g(i, j), k));
        if (!dU[i][k].is_zero()) terms.push_back(m.g(k, j) * dU[i][k]);
        if (!dU[j][k].is_zero()) terms.push_back(m.g(i, k) * dU[j][k]);
      }
      Expr v = sum_of(std::move(terms));
      out.at({i, j}) = v;
      out.at({j, i}) = v;
    }
  }
  return out;
}

NumericValue sectional_curvature(const CurvatureBundle& b, const std::vector<Expr>& X,
                                 const std::vector<Expr>& Y, const Point& p, EvalMode mode) {
  const std::size_t n = b.dim();
  std::vector<NumericValue> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = evaluate(X.at(i), p, mode);
    y[i] = evaluate(Y.at(i), p, mode);
  }
  auto g = [&](const std::vector<NumericValue>& u, const std::vector<NumericValue>& v) {
    NumericValue acc = mode == EvalMode::Float ? NumericValue(0.0) : NumericValue();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!b.chart.g(i, j).is_zero()) acc += evaluate(b.chart.g(i, j), p, mode) * u[i] * v[j];
      }
    }
    return acc;
  };
  NumericValue area = g(x, x) * g(y, y) - g(x, y) * g(x, y);
  if (area.is_zero()) throw std::domain_error("degenerate plane: |X ^ Y|^2 = 0");
  NumericValue rxyyx = mode == EvalMode::Float ? NumericValue(0.0) : NumericValue();
  for_each_index(n, 4, [&](std::span<const std::size_t> idx) {
    const Expr& r = b.riemann[idx];
    if (r.is_zero()) return;
    NumericValue w = x[idx[0]] * y[idx[1]] * y[idx[2]] * x[idx[3]];
    if (w.is_zero()) return;
    rxyyx += evaluate(r, p, mode) * w;
  });
  NumericValue k = rxyyx / area;
  return b.chart.convention().ricci_sign < 0 ? -k : k;
}

TensorField exterior_derivative(const std::vector<Expr>& omega) {
  const std::size_t n = omega.size();
  TensorField out(n, 0, 2);
  out.antisymmetric.emplace_back(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out.at({i, j}) = simplify(differentiate(omega[j], i) - differentiate(omega[i], j));
    }
  }
  return out;
}

TensorField exterior_derivative_covariant(const std::vector<Expr>& omega, const TensorField& gamma) {
  TensorField nabla = covariant_derivative(covector(omega), gamma);
  const std::size_t n = omega.size();
  TensorField out(n, 0, 2);
  out.antisymmetric.emplace_back(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at({i, j}) = simplify(nabla.at({i, j}) - nabla.at({j, i}));
  }
  return out;
}

TensorField lower_index(const TensorField& vec, const TensorField& metric) {
  const std::size_t n = vec.dim();
  TensorField out(n, 0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (!metric.at({i, j}).is_zero() && !vec.at({j}).is_zero()) terms.push_back(metric.at({i, j}) * vec.at({j}));
    }
    out.at({i}) = sum_of(std::move(terms));
  }
  return out;
}

TensorField raise_index(const TensorField& covec, const TensorField& inverse) {
  const std::size_t n = covec.dim();
  TensorField out(n, 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (!inverse.at({i, j}).is_zero() && !covec.at({j}).is_zero()) {
        terms.push_back(inverse.at({i, j}) * covec.at({j}));
      }
    }
    out.at({i}) = sum_of(std::move(terms));
  }
  return out;
}

TensorField contract(const TensorField& t, int a, int b, const TensorField& inverse) {
  if (a == b || a < 0 || b < 0 || a >= t.rank() || b >= t.rank()) {
    throw std::invalid_argument("bad contraction slots");
  }
  if (a > b) std::swap(a, b);
  const bool a_up = a < t.upper();
  const bool b_up = b < t.upper();
  if (a_up && b_up) throw std::invalid_argument("contracting two upper slots needs the metric");
  const bool mixed = a_up != b_up;
  const std::size_t n = t.dim();
  TensorField out(n, t.upper() - (a_up ? 1 : 0) - (b_up ? 1 : 0),
                  t.lower() - (a_up ? 0 : 1) - (b_up ? 0 : 1));
  std::vector<std::size_t> full(static_cast<std::size_t>(t.rank()));
  for_each_index(n, out.rank(), [&](std::span<const std::size_t> idx) {
    std::size_t src = 0;
    for (int s = 0; s < t.rank(); ++s) {
      if (s != a && s != b) full[static_cast<std::size_t>(s)] = idx[src++];
    }
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < n; ++i) {
      full[static_cast<std::size_t>(a)] = i;
      if (mixed) {
        full[static_cast<std::size_t>(b)] = i;
        terms.push_back(t[full]);
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        const Expr& g = inverse.at({i, j});
        if (g.is_zero()) continue;
        full[static_cast<std::size_t>(b)] = j;
        const Expr& c = t[full];
        if (!c.is_zero()) terms.push_back(g * c);
      }
    }
    out[idx] = sum_of(std::move(terms));
  });
  return out;
}

Expr metric_trace(const TensorField& t, const TensorField& inverse) {
  return contract(t, 0, 1, inverse).data().front();
}

Expr apply2(const TensorField& t, const std::vector<Expr>& X, const std::vector<Expr>& Y) {
  const std::size_t n = t.dim();
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < n; ++i) {
    if (X[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (Y[j].is_zero() || t.at({i, j}).is_zero()) continue;
      terms.push_back(t.at({i, j}) * X[i] * Y[j]);
    }
  }
  return sum_of(std::move(terms));
}

} // namespace curvlab
