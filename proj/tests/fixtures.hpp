#pragma once

#include "curvlab/expr/parser.hpp"
#include "curvlab/derived/msqe_structure.hpp"
#include "curvlab/tensor/chart.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using curvlab::ChartManifold;
using curvlab::Convention;
using curvlab::Expr;

inline const std::vector<std::string>& coords4() {
  static const std::vector<std::string> c{"x1", "x2", "x3", "x4"};
  return c;
}

inline Expr E(const std::string& s, std::size_t n = 4) {
  return curvlab::parse_expr(s, curvlab::default_coords(n));
}

inline std::vector<Expr> Es(std::initializer_list<const char*> items) {
  std::vector<Expr> out;
  for (auto s : items) out.push_back(E(s, items.size()));
  return out;
}

/// Lorentzian example spacetime diag(1, 2 x1^2, 2 x2^2, -1).
inline ChartManifold example_spacetime(Convention c = {}) {
  return curvlab::diagonal_chart({"1", "2*(x1)^2", "2*(x2)^2", "-1"}, c);
}

inline ChartManifold minkowski() { return curvlab::diagonal_chart({"1", "1", "1", "-1"}); }
inline ChartManifold euclidean(std::size_t n) {
  return curvlab::diagonal_chart(std::vector<std::string>(n, "1"));
}
inline ChartManifold polar_plane() { return curvlab::diagonal_chart({"1", "(x1)^2"}); }

/// Stereographic chart of the sphere of curvature k.
inline ChartManifold stereographic(const std::string& k) {
  std::string f = "1/(1 + (" + k + ")/4*(x1^2 + x2^2))^2";
  return curvlab::diagonal_chart({f, f});
}

/// Unit-sphere factor times a flat Lorentzian plane: R is covariantly constant.
inline ChartManifold sphere_times_plane() {
  std::string f = "1/(1 + (x1^2 + x2^2)/4)^2";
  return curvlab::diagonal_chart({f, f, "1", "-1"});
}

/// Conformally flat exp(2 x1) * identity.
inline ChartManifold conformally_flat() {
  return curvlab::diagonal_chart({"exp(2*x1)", "exp(2*x1)", "exp(2*x1)", "exp(2*x1)"});
}

/// Diagonal metric with entries a_i + b_i * x_{j_i}^2, coefficients from the
/// raw outputs of mt19937_64 so the fixture is identical on every platform.
inline ChartManifold random_diagonal(std::uint64_t seed, std::size_t n = 4) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> entries;
  for (std::size_t i = 0; i < n; ++i) {
    auto a = 1 + rng() % 4;
    auto b = 1 + rng() % 3;
    auto j = 1 + rng() % n;
    entries.push_back(std::to_string(a) + " + " + std::to_string(b) + "*x" + std::to_string(j) + "^2");
  }
  return curvlab::diagonal_chart(entries);
}

} // namespace fixtures

namespace fixtures {

/// Stereographic chart of the unit 4-sphere; conformally flat and Einstein.
inline ChartManifold sphere4() {
  std::string f = "1/(1 + (x1^2 + x2^2 + x3^2 + x4^2)/4)^2";
  return curvlab::diagonal_chart({f, f, f, f});
}

/// Example-spacetime structure data: A = dx4, B = x1 dx2 + x2 dx3, D and psi
/// as printed, eps1 = -1.
inline curvlab::MsqeInput example_structure() {
  curvlab::MsqeInput in;
  in.A = Es({"0", "0", "0", "1"});
  in.B = Es({"0", "x1", "x2", "0"});
  in.D = {Es({"1", "x1/x2", "0", "0"}), Es({"x1/x2", "-2", "0", "0"}), Es({"0", "0", "1", "0"}),
          Es({"0", "0", "0", "0"})};
  in.psi = std::array<Expr, 5>{E("(3/4)*exp(x1)"), E("2*exp(x1)"), E("-exp(x1)"), E("-x1"), E("-1/(x1)^2")};
  in.eps1 = -1;
  in.eps2 = 1;
  return in;
}

} // namespace fixtures
