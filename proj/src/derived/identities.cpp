#include "curvlab/derived/identities.hpp"

#include "curvlab/derived/derived.hpp"
#include "curvlab/expr/simplify.hpp"

namespace curvlab {

namespace {

ResidualCheck fresh() {
  ResidualCheck c;
  c.symbolic_zero = true;
  return c;
}

} // namespace

std::vector<IdentityResult> identity_suite(const CurvatureBundle& b, std::span<const Point> points,
                                           EvalMode mode) {
  const std::size_t n = b.dim();
  const auto& R = b.riemann;
  std::vector<IdentityResult> out;

  IdentityResult bianchi{"first_bianchi", true, fresh()};
  IdentityResult pairs{"riemann_pair_symmetries", true, fresh()};
  for_each_index(n, 4, [&](std::span<const std::size_t> x) {
    const auto i = x[0], j = x[1], k = x[2], l = x[3];
    if (j <= k && k <= l) {
      bianchi.check.merge(check_zero(std::vector<Expr>{R.at({i, j, k, l}), R.at({i, k, l, j}), R.at({i, l, j, k})},
                                     points, mode));
    }
    pairs.check.merge(check_zero(std::vector<Expr>{R.at({i, j, k, l}), R.at({j, i, k, l})}, points, mode));
    pairs.check.merge(check_zero(std::vector<Expr>{R.at({i, j, k, l}), R.at({i, j, l, k})}, points, mode));
    pairs.check.merge(check_zero(std::vector<Expr>{R.at({i, j, k, l}), -R.at({k, l, i, j})}, points, mode));
  });
  out.push_back(std::move(bianchi));
  out.push_back(std::move(pairs));

  out.push_back({"metric_compatibility", true, check_zero(covariant_derivative(b.metric, b.christoffel), points, mode)});

  IdentityResult trace_free{"conformal_trace_free", n >= 4, fresh()};
  IdentityResult antisym{"conformal_last_pair_antisymmetry", n >= 4, fresh()};
  if (n >= 4) {
    TensorField C = conformal_tensor(b);
    for (int a = 0; a < 4; ++a) {
      for (int c = a + 1; c < 4; ++c) trace_free.check.merge(check_zero(contract(C, a, c, b.inverse), points, mode));
    }
    for_each_index(n, 4, [&](std::span<const std::size_t> x) {
      antisym.check.merge(
          check_zero(std::vector<Expr>{C.at({x[0], x[1], x[2], x[3]}), C.at({x[0], x[1], x[3], x[2]})}, points, mode));
    });
  }
  out.push_back(std::move(trace_free));
  out.push_back(std::move(antisym));

  IdentityResult conharmonic{"conharmonic_trace", n >= 3, fresh()};
  if (n >= 3) {
    TensorField tr = contract(conharmonic_tensor(b), 0, 3, b.inverse);
    Expr coef = simplify(b.scalar / Expr::integer(static_cast<long>(n) - 2));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        conharmonic.check.merge(check_zero(std::vector<Expr>{tr.at({j, k}), coef * b.metric.at({j, k})}, points, mode));
      }
    }
  }
  out.push_back(std::move(conharmonic));

  out.push_back({"contracted_bianchi", true, check_equal(divergence(R, b), ricci_curl(b), points, mode)});
  return out;
}

} // namespace curvlab
