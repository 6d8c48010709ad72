#include "curvlab/tensor/linalg.hpp"

#include <Eigen/SVD>

#include <numeric>
#include <stdexcept>

namespace curvlab {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

struct Reduced {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
  std::size_t rank = 0;
};

// Solves the consistent square system M x = c by Gauss-Jordan with full
// pivoting; free variables are set to zero in the particular solution.
Reduced solve_consistent(RMatrix M, std::vector<Rational> c) {
  const std::size_t n = M.size();
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), 0);
  std::size_t r = 0;
  for (; r < n; ++r) {
    std::size_t pi = n, pj = n;
    for (std::size_t i = r; i < n && pi == n; ++i) {
      for (std::size_t j = r; j < n; ++j) {
        if (M[i][col[j]] != 0) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == n) break;
    std::swap(M[r], M[pi]);
    std::swap(c[r], c[pi]);
    std::swap(col[r], col[pj]);
    const Rational pivot = M[r][col[r]];
    for (std::size_t j = 0; j < n; ++j) M[r][j] /= pivot;
    c[r] /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || M[i][col[r]] == 0) continue;
      const Rational f = M[i][col[r]];
      for (std::size_t j = 0; j < n; ++j) M[i][j] -= f * M[r][j];
      c[i] -= f * c[r];
    }
  }
  Reduced out;
  out.rank = r;
  out.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out.particular[col[i]] = c[i];
  for (std::size_t f = r; f < n; ++f) {
    std::vector<Rational> z(n, Rational(0));
    z[col[f]] = 1;
    for (std::size_t i = 0; i < r; ++i) z[col[i]] = -M[i][col[f]];
    out.kernel.push_back(std::move(z));
  }
  return out;
}

LeastSquares exact_least_squares(const NumericMatrix& A, const std::vector<NumericValue>& b) {
  const std::size_t rows = A.size();
  const std::size_t cols = A.empty() ? 0 : A.front().size();
  RMatrix N(cols, std::vector<Rational>(cols, Rational(0)));
  std::vector<Rational> c(cols, Rational(0));
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < cols; ++i) {
      const Rational& aki = A[k][i].exact();
      if (aki == 0) continue;
      c[i] += aki * b[k].exact();
      for (std::size_t j = 0; j < cols; ++j) N[i][j] += aki * A[k][j].exact();
    }
  }
  Reduced red = solve_consistent(N, c);
  std::vector<Rational> x = red.particular;
  if (!red.kernel.empty()) {
    // Project out the kernel component: (Z^T Z) t = -Z^T x0.
    const std::size_t m = red.kernel.size();
    RMatrix G(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> h(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < cols; ++k) G[i][j] += red.kernel[i][k] * red.kernel[j][k];
      }
      for (std::size_t k = 0; k < cols; ++k) h[i] -= red.kernel[i][k] * x[k];
    }
    Reduced t = solve_consistent(G, h);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < cols; ++k) x[k] += t.particular[i] * red.kernel[i][k];
    }
  }
  LeastSquares out;
  out.rank = red.rank;
  for (auto& v : x) out.solution.emplace_back(v);
  for (std::size_t k = 0; k < rows; ++k) {
    Rational s = -b[k].exact();
    for (std::size_t j = 0; j < cols; ++j) s += A[k][j].exact() * x[j];
    out.residual.emplace_back(s);
  }
  for (auto& z : red.kernel) {
    std::vector<NumericValue> v;
    for (auto& q : z) v.emplace_back(q);
    out.null_space.push_back(std::move(v));
  }
  return out;
}

LeastSquares float_least_squares(const NumericMatrix& A, const std::vector<NumericValue>& b) {
  const auto rows = static_cast<Eigen::Index>(A.size());
  const auto cols = static_cast<Eigen::Index>(A.empty() ? 0 : A.front().size());
  Eigen::MatrixXd M(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      M(i, j) = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double();
    }
    y(i) = b[static_cast<std::size_t>(i)].to_double();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  Eigen::VectorXd x = svd.solve(y);
  Eigen::VectorXd res = M * x - y;
  LeastSquares out;
  out.exact = false;
  out.rank = static_cast<std::size_t>(svd.rank());
  for (Eigen::Index j = 0; j < cols; ++j) out.solution.emplace_back(x(j));
  for (Eigen::Index i = 0; i < rows; ++i) out.residual.emplace_back(res(i));
  for (Eigen::Index k = svd.rank(); k < cols; ++k) {
    std::vector<NumericValue> v;
    for (Eigen::Index j = 0; j < cols; ++j) v.emplace_back(svd.matrixV()(j, k));
    out.null_space.push_back(std::move(v));
  }
  return out;
}

} // namespace

LeastSquares least_squares(const NumericMatrix& A, const std::vector<NumericValue>& b) {
  if (A.size() != b.size()) throw std::invalid_argument("least squares: row count mismatch");
  for (const auto& row : A) {
    if (row.size() != A.front().size()) throw std::invalid_argument("least squares: ragged matrix");
  }
  bool all_exact = true;
  for (const auto& row : A) {
    for (const auto& v : row) all_exact = all_exact && v.is_exact();
  }
  for (const auto& v : b) all_exact = all_exact && v.is_exact();
  return all_exact ? exact_least_squares(A, b) : float_least_squares(A, b);
}

} // namespace curvlab
