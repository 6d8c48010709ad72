#include "curvlab/tensor/chart.hpp"

#include "curvlab/expr/parser.hpp"
#include "curvlab/expr/simplify.hpp"

#include <stdexcept>

namespace curvlab {

std::string Convention::name() const { return ricci_sign < 0 ? "reversed" : "textbook"; }

ChartManifold::ChartManifold(std::vector<std::string> coords, ExprMatrix metric, Convention convention)
    : coords_(std::move(coords)), metric_(std::move(metric)), convention_(convention) {
  const std::size_t n = coords_.size();
  if (n < 2) throw std::invalid_argument("chart dimension must be at least 2");
  if (metric_.size() != n) throw std::invalid_argument("metric has the wrong number of rows");
  for (auto& row : metric_) {
    if (row.size() != n) throw std::invalid_argument("metric row has the wrong length");
    for (auto& e : row) e = simplify(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (metric_[i][j] != metric_[j][i]) {
        throw std::invalid_argument("metric is not symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
      }
    }
  }
  if (convention_.ricci_sign != 1 && convention_.ricci_sign != -1) {
    throw std::invalid_argument("ricci_sign must be +1 or -1");
  }
}

ChartManifold ChartManifold::parse(std::vector<std::string> coords,
                                   const std::vector<std::vector<std::string>>& lower,
                                   Convention convention) {
  const std::size_t n = coords.size();
  ExprMatrix g(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      g[i][j] = g[j][i] = parse_expr(lower.at(i).at(j), coords);
    }
  }
  return ChartManifold(std::move(coords), std::move(g), convention);
}

std::vector<std::string> default_coords(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

ChartManifold diagonal_chart(const std::vector<std::string>& entries, Convention convention) {
  auto coords = default_coords(entries.size());
  ExprMatrix g(entries.size(), std::vector<Expr>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) g[i][i] = parse_expr(entries[i], coords);
  return ChartManifold(std::move(coords), std::move(g), convention);
}

} // namespace curvlab
