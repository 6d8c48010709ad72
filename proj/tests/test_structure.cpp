#include "curvlab/structure/checks.hpp"

#include "doctest.h"
#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace curvlab;
using fixtures::E;
using fixtures::Es;

namespace {

bool same(const Expr& a, const Expr& b) { return simplify(a - b).is_zero(); }

Point at(std::initializer_list<long> v) {
  Point p;
  for (long x : v) p.push_back(NumericValue::integer(x));
  return p;
}

MsqeStructure example() {
  auto b = compute_curvature(fixtures::example_spacetime());
  return complete_structure(fixtures::example_structure(), b);
}

// Generic structure for Einstein fixtures: independent regressors at every point.
MsqeStructure generic4() {
  MsqeStructure s;
  s.xi1 = Es({"1", "0", "0", "0"});
  s.xi2 = Es({"0", "1", "0", "0"});
  s.A = s.xi1;
  s.B = s.xi2;
  s.D = covariant2({Es({"0", "0", "0", "0"}), Es({"0", "0", "0", "0"}), Es({"0", "0", "1", "0"}),
                    Es({"0", "0", "0", "2"})});
  return s;
}

} // namespace

TEST_CASE("frame audit of the example spacetime") {
  auto b = compute_curvature(fixtures::example_spacetime());
  auto s = example();
  auto pts = sample_points(4);
  auto a = audit_frame(b, s, pts);
  CHECK(a.a_dot_a == Expr::integer(-1));
  CHECK(a.b_dot_b == Expr::integer(1));
  CHECK(a.a_dot_b.is_zero());
  CHECK(a.norm_A.verdict() == "exact");
  CHECK(a.norm_B.verdict() == "exact");
  CHECK(a.orthogonality.verdict() == "exact");
  CHECK(a.duality_A.passed());
  CHECK(a.duality_B.passed());
  CHECK(a.d_symmetry.passed());
  CHECK(a.d_xi1.verdict() == "exact");
  CHECK(same(a.trace_D, E("1 - 1/x1^2 + 1/(2*x2^2)")));
  CHECK_FALSE(a.trace_D_zero.passed());
  CHECK(std::find(a.warnings.begin(), a.warnings.end(), "D is not trace-free") != a.warnings.end());
  // xi1 is the raised A: -d4.
  CHECK(s.xi1 == Es({"0", "0", "0", "-1"}));
}

TEST_CASE("audit flags a declared sign that disagrees with the metric") {
  auto b = compute_curvature(fixtures::example_spacetime());
  auto in = fixtures::example_structure();
  in.eps1 = 1;
  auto a = audit_frame(b, complete_structure(in, b), sample_points(4));
  CHECK_FALSE(a.norm_A.passed());
  CHECK(a.norm_A.max_abs == NumericValue::integer(2));
}

TEST_CASE("MSQE fit on the example spacetime with the printed psi's") {
  auto b = compute_curvature(fixtures::example_spacetime());
  auto s = example();
  auto pts = sample_points(4);
  auto f = fit_msqe(b, s, pts);
  REQUIRE(f.pinned.size() == 10);
  auto find = [&](const std::string& label) {
    for (const auto& c : f.pinned) {
      if (c.label == label) return c;
    }
    FAIL("missing component " << label);
    return f.pinned.front();
  };
  CHECK(find("12").residual.is_zero());
  CHECK(find("12").check.verdict() == "exact");
  // Ric_11 = 0 but the model gives psi1 + psi5.
  CHECK(same(find("11").residual, E("-(3/4)*exp(x1) + 1/x1^2")));
  CHECK_FALSE(find("11").check.passed());
  REQUIRE(f.trace.has_value());
  CHECK(f.trace->lorentzian.is_zero());
  CHECK_FALSE(f.trace->riemannian_check.passed());
  // The signature-aware trace differs from r by psi5 tr D.
  CHECK(same(f.trace->signature_aware, E("(1/x1^2)*(1 - 1/x1^2 + 1/(2*x2^2))")));
  CHECK(f.fit.names.size() == 5);
  CHECK(f.fit.points.size() == 20);
}

TEST_CASE("MSQE round trip on synthetic constructions") {
  int lorentzian = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto syn = synthetic::msqe(seed);
    const auto n = syn.bundle.dim();
    auto pts = sample_points(n, seed);
    INFO("seed " << seed);
    auto a = audit_frame(syn.bundle, syn.s, pts);
    CHECK(a.norm_A.passed());
    CHECK(a.norm_B.passed());
    CHECK(a.orthogonality.passed());
    CHECK(a.d_xi1.passed());
    auto f = fit_msqe(syn.bundle, syn.s, std::span(pts).first(3));
    CHECK(f.fit.verdict() == "exact");
    CHECK_FALSE(f.fit.rank_deficient());
    CHECK(f.fit.point_independent);
    auto coef = f.fit.coefficients();
    REQUIRE(coef.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
      REQUIRE(coef[k].is_exact());
      CHECK(coef[k].exact() == syn.psi[k]);
    }
    REQUIRE(f.trace.has_value());
    CHECK(f.trace->signature_aware.is_zero());
    if (syn.s.eps1 < 0) ++lorentzian;
  }
  CHECK(lorentzian == 50);
}

TEST_CASE("MSQE fit on Einstein input") {
  auto b = compute_curvature(fixtures::sphere4());
  auto s = generic4();
  auto pts = sample_points(4);
  auto f = fit_msqe(b, s, pts);
  CHECK(f.fit.verdict() == "exact");
  CHECK(f.fit.point_independent);
  auto coef = f.fit.coefficients();
  CHECK(coef[0].exact() == Rational(-3));  // r/n in the default convention
  for (std::size_t k = 1; k < 5; ++k) CHECK(coef[k].is_zero());
  CHECK(same(b.scalar, E("-12")));
}

TEST_CASE("rank-deficient regressors report the null space") {
  auto b = compute_curvature(fixtures::sphere4());
  auto s = generic4();
  s.D = b.metric;  // collinear with g
  auto pts = sample_points(4);
  auto f = fit_msqe(b, s, std::span(pts).first(2));
  CHECK(f.fit.rank_deficient());
  CHECK(f.fit.rank == 4);
  REQUIRE(f.fit.null_space.size() == 1);
  const auto& v = f.fit.null_space[0];
  CHECK(v[1].is_zero());
  CHECK(v[2].is_zero());
  CHECK(v[3].is_zero());
  CHECK((v[0] + v[4]).is_zero());
  // Minimum norm splits r/n evenly between psi1 and psi5.
  CHECK(f.fit.coefficients()[0].exact() == Rational(-3, 2));
  CHECK(f.fit.coefficients()[4].exact() == Rational(-3, 2));
  CHECK(f.fit.passed());
}

TEST_CASE("quasi-constant curvature") {
  auto pts = sample_points(4);
  SUBCASE("space form") {
    for (int sign : {1, -1}) {
      Convention c = sign > 0 ? Convention::textbook() : Convention::reversed();
      auto chart = fixtures::sphere4();
      chart.set_convention(c);
      auto b = compute_curvature(chart);
      auto r = check_quasi_constant_curvature(b, generic4(), std::nullopt, std::span(pts).first(4));
      CHECK(r.fit.verdict() == "exact");
      auto f = r.fit.coefficients();
      CHECK(f[0].exact() == Rational(sign));
      for (std::size_t k = 1; k < 5; ++k) CHECK(f[k].is_zero());
    }
  }
  SUBCASE("forward construction") {
    auto b = compute_curvature(fixtures::example_spacetime());
    auto s = example();
    std::array<Expr, 5> f{E("2"), E("-1/3"), E("5"), E("x1"), E("1/2")};
    auto blocks = quasi_constant_blocks(b.metric, s);
    TensorField R(4, 0, 4);
    for (std::size_t c = 0; c < 5; ++c) R = R + f[c] * blocks[c];
    b.riemann = R;
    auto r = check_quasi_constant_curvature(b, s, std::nullopt, std::span(pts).first(5));
    CHECK(r.fit.verdict() == "exact");
    for (const auto& pf : r.fit.points) {
      CHECK(pf.coefficients[0].exact() == 2);
      CHECK(pf.coefficients[1].exact() == Rational(-1, 3));
      CHECK(pf.coefficients[2].exact() == 5);
      CHECK(pf.coefficients[3] == pf.point[0]);
      CHECK(pf.coefficients[4].exact() == Rational(1, 2));
    }
    CHECK_FALSE(r.fit.point_independent);
  }
  SUBCASE("vanishing space-matter tensor") {
    // Unit sphere, default convention: R = -G, Ric = -3g, r = -12, and P = (2 - sigma) G.
    auto b = compute_curvature(fixtures::sphere4());
    auto s = generic4();
    s.psi = std::array<Expr, 5>{E("-3"), Expr(), Expr(), Expr(), Expr()};
    PhysicsConfig phys{Rational(1), E("2")};
    auto r = check_quasi_constant_curvature(b, s, phys, std::span(pts).first(4));
    REQUIRE(r.space_matter_zero.has_value());
    CHECK(r.space_matter_zero->passed());
    REQUIRE(r.predicted.has_value());
    CHECK((*r.predicted)[0] == Expr::integer(-1));
    CHECK(r.predicted_residual->verdict() == "exact");
    for (const auto& gap : r.coefficient_gap) CHECK(gap.is_zero());
    CHECK(r.fit.coefficients()[1].is_zero());

    PhysicsConfig off{Rational(1), E("3")};
    auto r2 = check_quasi_constant_curvature(b, s, off, std::span(pts).first(2));
    CHECK_FALSE(r2.space_matter_zero->passed());
    CHECK(r2.coefficient_gap[0] == NumericValue::integer(1));
  }
}

TEST_CASE("Ricci recurrence") {
  auto pts = sample_points(4);
  SUBCASE("Minkowski") {
    auto r = fit_ricci_recurrence(compute_curvature(fixtures::minkowski()), pts);
    CHECK(r.classification == RecurrenceClass::RicciSymmetric);
    CHECK(r.nabla_ric_zero.verdict() == "exact");
    for (const auto& c : r.generalized.coefficients()) CHECK(c.is_zero());
  }
  SUBCASE("covariantly constant Ricci") {
    auto r = fit_ricci_recurrence(compute_curvature(fixtures::sphere_times_plane()), pts);
    CHECK(r.classification == RecurrenceClass::RicciSymmetric);
    CHECK(r.generalized.verdict() == "exact");
  }
  SUBCASE("Ric = exp(x1) g on a flat chart") {
    auto b = compute_curvature(fixtures::euclidean(4));
    TensorField ric = E("exp(x1)") * b.metric;
    auto r = fit_ricci_recurrence(ric, b.metric, b.christoffel, pts);
    CHECK(r.classification == RecurrenceClass::RicciRecurrent);
    CHECK(r.degenerate);
    CHECK(r.recurrent.verdict() == "approximate");
    for (const auto& pf : r.recurrent.points) {
      CHECK(pf.coefficients[0].to_double() == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t k = 1; k < 4; ++k) CHECK(std::fabs(pf.coefficients[k].to_double()) < 1e-12);
    }
  }
  SUBCASE("Ric = x1 g + dx1^2 on a flat chart is generalized recurrent") {
    // nabla_1 Ric = g, which is not a multiple of Ric = x1 g + dx1^2.
    auto b = compute_curvature(fixtures::euclidean(3));
    TensorField ric = E("x1", 3) * b.metric + covariant2({Es({"1", "0", "0"}), Es({"0", "0", "0"}),
                                                          Es({"0", "0", "0"})});
    auto r = fit_ricci_recurrence(ric, b.metric, b.christoffel, sample_points(3));
    CHECK(r.classification == RecurrenceClass::GeneralizedRicciRecurrent);
    CHECK_FALSE(r.degenerate);
    for (const auto& pf : r.generalized.points) {
      CHECK(pf.coefficients[0].is_zero());
      CHECK(pf.coefficients[3].exact() == 1);
    }
  }
  SUBCASE("example spacetime baseline") {
    auto r = fit_ricci_recurrence(compute_curvature(fixtures::example_spacetime()), pts);
    CHECK(r.classification == RecurrenceClass::Neither);
    CHECK(r.generalized.exact);
    CHECK_FALSE(r.generalized.passed());
  }
}

TEST_CASE("vector field classes") {
  auto pts = sample_points(4);
  SUBCASE("d4 on the example spacetime") {
    auto b = compute_curvature(fixtures::example_spacetime());
    auto c = classify_vector_field(b, Es({"0", "0", "0", "1"}), pts);
    CHECK(c.parallel.verdict() == "exact");
    CHECK(c.geodesic.verdict() == "exact");
    CHECK(c.concircular.verdict() == "exact");
    CHECK(c.torse_forming.verdict() == "exact");
    for (const auto& pf : c.concircular.points) CHECK(pf.coefficients[0].is_zero());
    for (const auto& pf : c.torse_forming.points) {
      for (const auto& v : pf.coefficients) CHECK(v.is_zero());
    }
    REQUIRE(c.unit_consistency.has_value());
    CHECK(c.unit_consistency->is_zero());
  }
  SUBCASE("position field is concircular with mu = 1") {
    auto b = compute_curvature(fixtures::euclidean(2));
    auto c = classify_vector_field(b, {E("x1", 2), E("x2", 2)}, sample_points(2));
    CHECK_FALSE(c.is_parallel());
    CHECK(c.concircular.verdict() == "exact");
    CHECK(c.concircular.point_independent);
    CHECK(c.concircular.coefficients()[0].exact() == 1);
    CHECK(c.is_torse_forming());
    CHECK_FALSE(c.is_geodesic());
  }
  SUBCASE("x1 d1 on the plane is recurrent torse-forming") {
    auto b = compute_curvature(fixtures::euclidean(2));
    auto p2 = sample_points(2);
    auto c = classify_vector_field(b, {E("x1", 2), Expr()}, p2);
    CHECK_FALSE(c.is_concircular());
    CHECK(c.torse_forming.verdict() == "exact");
    CHECK(c.torse_forming.points[0].point[0].exact() == Rational(7, 4));
    for (const auto& pf : c.torse_forming.points) {
      CHECK(pf.coefficients[0].is_zero());
      CHECK(pf.coefficients[1].exact() * pf.point[0].exact() == 1);
      CHECK(pf.coefficients[2].is_zero());
    }
    // alpha1 = 1/x1 equals 1 on the line x1 = 1.
    auto c1 = classify_vector_field(b, {E("x1", 2), Expr()}, std::vector<Point>{at({1, 2})});
    CHECK(c1.torse_forming.coefficients()[1].exact() == 1);
    CHECK_FALSE(c.unit_consistency.has_value());
  }
  SUBCASE("unit radial field on the polar plane") {
    auto b = compute_curvature(fixtures::polar_plane());
    auto c = classify_vector_field(b, {E("1", 2), Expr()}, sample_points(2));
    CHECK(c.torse_forming.verdict() == "exact");
    CHECK(c.is_geodesic());
    CHECK_FALSE(c.is_concircular());
    for (const auto& pf : c.torse_forming.points) {
      CHECK(pf.coefficients[0].exact() * pf.point[0].exact() == 1);
      CHECK((pf.coefficients[1] + pf.coefficients[0]).is_zero());
    }
    REQUIRE(c.unit_consistency.has_value());
    CHECK(c.unit_consistency->is_zero());
  }
  SUBCASE("parallel fields pass every weaker test") {
    for (const auto& [chart, U] : std::vector<std::pair<ChartManifold, std::vector<Expr>>>{
             {fixtures::minkowski(), Es({"1", "2", "0", "-3"})},
             {fixtures::sphere_times_plane(), Es({"0", "0", "1", "1"})},
             {fixtures::example_spacetime(), Es({"0", "0", "0", "5"})}}) {
      auto c = classify_vector_field(compute_curvature(chart), U, std::span(pts).first(5));
      REQUIRE(c.is_parallel());
      CHECK(c.is_concircular());
      CHECK(c.is_torse_forming());
      CHECK(c.is_geodesic());
      for (const auto& v : c.torse_forming.coefficients()) CHECK(v.is_zero());
    }
  }
  CHECK_THROWS_AS(classify_vector_field(compute_curvature(fixtures::minkowski()), Es({"0", "0", "0", "0"}), pts),
                  std::invalid_argument);
}

TEST_CASE("Codazzi check") {
  auto pts = sample_points(4);
  auto b = compute_curvature(fixtures::example_spacetime());
  CHECK(codazzi_check(b, b.metric, pts).verdict() == "exact");
  CHECK(codazzi_check(b, E("3") * b.metric, pts).verdict() == "exact");
  auto baseline = codazzi_check(b, example().D, pts);
  CHECK_FALSE(baseline.passed());

  auto flat = compute_curvature(fixtures::euclidean(2));
  auto bad = codazzi_check(flat, E("x1", 2) * flat.metric, sample_points(2));
  CHECK_FALSE(bad.passed());
  CHECK(bad.max_abs == NumericValue::integer(1));
}

TEST_CASE("eigenvector check") {
  auto pts = sample_points(4);
  auto b = compute_curvature(fixtures::example_spacetime());
  for (const auto& xi : {Es({"1", "0", "0", "0"}), Es({"0", "x2", "1", "3"})}) {
    auto r = eigenvector_check(b, E("5") * b.metric, xi, pts);
    REQUIRE(r.eigenvalue.has_value());
    CHECK(*r.eigenvalue == Expr::integer(5));
    CHECK(r.residual.verdict() == "exact");
  }
  // D = b g on span(xi) plus anything on the complement.
  auto flat = compute_curvature(fixtures::euclidean(3));
  TensorField D = covariant2({Es({"7/3", "0", "0"}), Es({"0", "1", "x2"}), Es({"0", "x2", "-4"})});
  auto r = eigenvector_check(flat, D, Es({"2", "0", "0"}), sample_points(3));
  CHECK(*r.eigenvalue == Expr::constant(Rational(7, 3)));
  CHECK(r.residual.verdict() == "exact");
  auto off = eigenvector_check(flat, D, Es({"0", "1", "0"}), sample_points(3));
  CHECK_FALSE(off.residual.passed());

  // Null vector: least-squares eigenvalue.
  auto mink = compute_curvature(fixtures::minkowski());
  auto nr = eigenvector_check(mink, E("5") * mink.metric, Es({"1", "0", "0", "1"}), pts);
  CHECK(nr.null_vector);
  CHECK_FALSE(nr.eigenvalue.has_value());
  REQUIRE(nr.null_fit.has_value());
  CHECK(nr.null_fit->verdict() == "exact");
  CHECK(nr.null_fit->coefficients()[0].exact() == 5);

  // The example's D with xi2: D(xi2, xi2) = -1/(2 x1^2) + 1/(4 x2^2), and xi2 is not an eigenvector.
  auto s = example();
  auto ex = eigenvector_check(b, s.D, s.xi2, pts);
  CHECK(same(*ex.eigenvalue, E("-1/(2*x1^2) + 1/(4*x2^2)")));
  CHECK_FALSE(ex.residual.passed());
}

TEST_CASE("1-form closedness") {
  auto pts = sample_points(4);
  CHECK(oneform_closedness(Es({"1", "0", "0", "0"}), pts).verdict() == "exact");
  CHECK(oneform_closedness(Es({"2*x1*x2", "x1^2", "0", "0"}), pts).verdict() == "exact");
  auto s = example();
  CHECK(oneform_closedness(s.A, pts).verdict() == "exact");
  auto dB = oneform_closedness(s.B, pts);
  CHECK_FALSE(dB.passed());
  CHECK(dB.max_abs == NumericValue::integer(1));
  CHECK(exterior_derivative(s.B).at({0, 1}) == Expr::integer(1));
  // psi4 dB = -x1 dB does not vanish.
  CHECK_FALSE(closedness_linkage(s, pts).passed());
  s.psi->at(3) = Expr();
  CHECK(closedness_linkage(s, pts).passed());
}
