// Acceptance checks 1-9: one PASS/FAIL line each, nonzero exit on any failure.

#include "curvlab/derived/identities.hpp"
#include "curvlab/expr/simplify.hpp"
#include "curvlab/report/report.hpp"

#include "fixtures.hpp"
#include "synthetic.hpp"

#include <fmt/core.h>

#include <functional>
#include <map>
#include <random>
#include <tuple>

using namespace curvlab;
using fixtures::E;
using fixtures::Es;

namespace {

const std::string kSource = CURVLAB_SOURCE_DIR;

// Collects failure notes for one criterion.
struct Criterion {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool same(const Expr& a, const Expr& b) { return simplify(a - b).is_zero(); }

bool exact_zero(const Expr& e, std::span<const Point> pts) {
  auto c = check_zero(e, pts);
  return c.passed() && c.exact;
}

ManifoldManifest example_manifest() { return load_manifest(kSource + "/manifests/msqe_example.json"); }

void christoffel_golden(Criterion& c) {
  auto m = example_manifest();
  auto b = compute_curvature(m.chart());
  auto pts = sample_points(4, 0);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Expr> want = {
      {{0, 1, 1}, E("-2*x1")}, {{1, 2, 2}, E("-x2/x1^2")}, {{1, 0, 1}, E("1/x1")}, {{2, 1, 2}, E("1/x2")}};
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i; j < 4; ++j) {
        Expr got = simplify(b.christoffel.at({k, i, j}));
        auto it = want.find({k, i, j});
        Expr expected = it == want.end() ? Expr() : it->second;
        std::string label = fmt::format("Gamma^{}_{}{}", k + 1, i + 1, j + 1);
        c.require(got == simplify(expected) || exact_zero(got - expected, pts), label + " = " + to_string(got));
      }
    }
  }
}

void ricci_reproduction(Criterion& c) {
  auto m = example_manifest();
  auto pts = sample_points(4, 0);
  for (auto [conv, sign] : {std::pair{Convention::reversed(), -1}, std::pair{Convention::textbook(), 1}}) {
    m.options.convention = conv;
    auto b = compute_curvature(m.chart());
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i; j < 4; ++j) {
        Expr want = (i == 0 && j == 1) ? Expr::integer(sign) / E("x1*x2") : Expr();
        c.require(same(b.ricci.at({i, j}), want), conv.name() + " Ric_" + index_label({i, j}));
      }
    }
    c.require(simplify(b.scalar).is_zero(), conv.name() + " r = 0");
    auto rep = report_json(run_pipeline(m, {"curvature"}));
    c.require(rep["convention"]["name"] == conv.name(), "report names the " + conv.name() + " convention");
  }
  const auto& psi = *m.structure->psi;
  c.require(simplify(Expr::integer(4) * psi[0] - psi[1] + psi[2]).is_zero(), "4 psi1 - psi2 + psi3 = 0");
}

void structure_audit(Criterion& c) {
  auto m = example_manifest();
  auto b = compute_curvature(m.chart());
  auto s = complete_structure(*m.structure, b);
  auto pts = sample_points(4, 0);
  auto a = audit_frame(b, s, pts);
  c.require(a.a_dot_a == Expr::integer(-1) && a.norm_A.verdict() == "exact", "A.A = -1");
  c.require(a.b_dot_b == Expr::integer(1) && a.norm_B.verdict() == "exact", "B.B = 1");
  c.require(a.a_dot_b.is_zero() && a.orthogonality.verdict() == "exact", "A.B = 0");
  c.require(a.d_xi1.verdict() == "exact", "D(., xi1) = 0");
  auto f = fit_msqe(b, s, pts);
  bool found = false;
  for (const auto& cr : f.pinned) {
    if (cr.label != "12") continue;
    found = true;
    c.require(cr.residual.is_zero() && cr.check.verdict() == "exact", "Ric_12 = psi5 D_12");
  }
  c.require(found, "Ric_12 component present");
  c.require(!simplify(a.trace_D).is_zero() && !a.trace_D_zero.passed(), "trace of D reported nonzero");
  c.require(same(a.trace_D, E("1 - 1/x1^2 + 1/(2*x2^2)")), "trace of D = " + to_string(a.trace_D));
}

void identity_suite_check(Criterion& c, std::string& note) {
  auto polar = compute_curvature(fixtures::polar_plane());
  std::vector<std::pair<std::string, CurvatureBundle>> charts;
  charts.emplace_back("Minkowski", compute_curvature(fixtures::minkowski()));
  charts.emplace_back("example", compute_curvature(example_manifest().chart()));
  charts.emplace_back("polar plane", polar);
  charts.emplace_back("random diagonal", compute_curvature(fixtures::random_diagonal(11)));
  std::size_t inapplicable = 0;
  for (const auto& [name, b] : charts) {
    auto pts = sample_points(b.dim(), 0);
    for (const auto& r : identity_suite(b, pts, EvalMode::Rational)) {
      if (!r.applicable) {
        ++inapplicable;
        continue;
      }
      c.require(r.check.verdict() == "exact", name + " " + r.name + " (rational): " + r.check.verdict());
    }
    for (const auto& r : identity_suite(b, pts, EvalMode::Float)) {
      if (!r.applicable) continue;
      c.require(r.check.passed() && r.check.max_relative <= 1e-9, name + " " + r.name + " (float)");
    }
  }
  note = fmt::format("{} conformal/conharmonic checks not applicable on the polar plane", inapplicable);
}

void msqe_round_trip(Criterion& c) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto syn = synthetic::msqe(seed);
    auto pts = sample_points(syn.bundle.dim(), seed);
    auto f = fit_msqe(syn.bundle, syn.s, pts);
    auto coef = f.fit.coefficients();
    bool ok = f.fit.verdict() == "exact" && f.fit.point_independent && coef.size() == 5;
    for (std::size_t k = 0; ok && k < 5; ++k) ok = coef[k].is_exact() && coef[k].exact() == syn.psi[k];
    c.require(ok, fmt::format("seed {} psi recovery", seed));
    c.require(f.trace && f.trace->signature_aware.is_zero() && f.trace->signature_check.verdict() == "exact",
              fmt::format("seed {} signature-aware trace", seed));
  }
  auto b = compute_curvature(fixtures::sphere4());
  MsqeStructure s;
  s.xi1 = Es({"1", "0", "0", "0"});
  s.xi2 = Es({"0", "1", "0", "0"});
  s.A = s.xi1;
  s.B = s.xi2;
  s.D = covariant2({Es({"0", "0", "0", "0"}), Es({"0", "0", "0", "0"}), Es({"0", "0", "1", "0"}),
                    Es({"0", "0", "0", "2"})});
  auto f = fit_msqe(b, s, sample_points(4, 0));
  auto coef = f.fit.coefficients();
  Expr r_over_n = simplify(b.scalar / Expr::integer(4));
  bool ok = f.fit.verdict() == "exact" && coef.size() == 5 && r_over_n.is_constant() && coef[0].is_exact() &&
            coef[0].exact() == r_over_n.value();
  for (std::size_t k = 1; ok && k < 5; ++k) ok = coef[k].is_zero();
  c.require(ok, "Einstein input: psi1 = r/n, others 0");
}

void specialization_rows(Criterion& c) {
  std::mt19937_64 rng(20240601);
  auto draw = [&] { return make_rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(1 + rng() % 9)); };
  for (int trial = 0; trial < 100; ++trial) {
    Rational p1 = draw(), p2 = draw(), p3 = draw();
    if (trial % 7 == 0) p2 = -p1;
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 6;
    const Rational nn(static_cast<long>(n));
    auto rows = specialization_table(p1, p2, p3, n);
    auto sign_class = [](const Rational& x) {
      return x > 0 ? SolitonClass::Expanding : x < 0 ? SolitonClass::Shrinking : SolitonClass::Steady;
    };
    Rational ricci = p1 + p2;
    Rational einstein = -((nn - 2) * p1 - p2 + p3) / 2;
    Rational traceless = ((nn - 1) * p2 - p3) / nn;
    Rational schouten = ((nn - 2) * p1 + (2 * nn - 3) * p2 - p3) / (2 * (nn - 1));
    const std::string t = fmt::format("trial {} n={}", trial, n);
    c.require(rows.size() == 4, t + " rows");
    if (rows.size() != 4) continue;
    c.require(rows[0].lambda == ricci && rows[0].classification == sign_class(p1 + p2), t + " Ricci");
    c.require(rows[1].lambda == einstein &&
                  rows[1].classification == sign_class(Rational(-((nn - 2) * p1 - p2 + p3))),
              t + " Einstein");
    c.require(rows[2].lambda == traceless && rows[2].classification == sign_class(Rational((nn - 1) * p2 - p3)),
              t + " traceless Ricci");
    c.require(rows[3].lambda == schouten &&
                  rows[3].classification == sign_class(Rational((nn - 2) * p1 + (2 * nn - 3) * p2 - p3)),
              t + " Schouten");
  }
}

void vector_fields(Criterion& c) {
  auto b = compute_curvature(example_manifest().chart());
  auto pts = sample_points(4, 0);
  auto v = classify_vector_field(b, Es({"0", "0", "0", "1"}), pts);
  c.require(v.parallel.verdict() == "exact", "d4 parallel");
  c.require(v.geodesic.verdict() == "exact", "d4 geodesic");
  c.require(v.concircular.verdict() == "exact" && v.concircular.point_independent &&
                v.concircular.coefficients()[0].is_zero() && v.concircular.max_residual.is_zero(),
            "d4 concircular with mu = 0");
  c.require(v.torse_forming.verdict() == "exact" && v.torse_forming.coefficients()[0].is_zero() &&
                v.torse_forming.max_residual.is_zero(),
            "d4 torse-forming with f = 0");
  auto flat = compute_curvature(fixtures::euclidean(4));
  auto p = classify_vector_field(flat, Es({"x1", "x2", "x3", "x4"}), pts);
  c.require(p.concircular.verdict() == "exact" && p.concircular.point_independent &&
                p.concircular.coefficients()[0] == NumericValue::integer(1),
            "position field concircular with mu = 1");
}

void physics_layer(Criterion& c) {
  auto pts = sample_points(4, 0);
  auto mk = compute_curvature(fixtures::minkowski());
  PhysicsConfig unit{Rational(1), Expr::integer(1)};
  TensorField T0(4, 0, 2);
  auto P = space_matter(mk, T0, unit);
  auto pg = check_equal(P, Expr::integer(-1) * g_tensor(mk.metric), pts);
  c.require(pg.verdict() == "exact", "Minkowski P = -G");

  auto ex = compute_curvature(example_manifest().chart());
  PhysicsConfig k1{Rational(1), Expr()};
  auto T = energy_momentum(ex, k1);
  c.require(check_equal(T, ex.ricci, pts).verdict() == "exact", "example T = Ric");
  auto divP = space_matter_divergence_efe(ex, k1);
  auto divR = divergence(space_matter(ex, T, k1), ex);
  std::size_t evaluated = 0;
  try {
    for (const auto& p : pts) evaluated += evaluate_all(divP, p, EvalMode::Rational).size() > 0 ? 1 : 0;
  } catch (const std::exception& e) {
    c.require(false, std::string("div P evaluation: ") + e.what());
  }
  c.require(evaluated == pts.size(), "div P evaluated at every point");
  c.require(check_equal(divP, divR, pts).verdict() == "exact", "div P by both routes");

  // S^2 x R^2 has parallel curvature; with constant energy density div P vanishes
  // and the gradient of sigma is zero. A varying sigma breaks div P = 0.
  auto sp = compute_curvature(fixtures::sphere_times_plane());
  c.require(fit_ricci_recurrence(sp, pts).nabla_ric_zero.verdict() == "exact", "fixture has nabla Ric = 0");
  PhysicsConfig constant{Rational(1), E("5/2")};
  bool div_zero = check_zero(space_matter_divergence_efe(sp, constant), pts).verdict() == "exact";
  c.require(div_zero, "div P = 0 with constant sigma");
  c.require(check_zero(gradient(constant.sigma, 4), pts).verdict() == "exact", "gradient of sigma vanishes");
  PhysicsConfig varying{Rational(1), E("x3")};
  c.require(!check_zero(space_matter_divergence_efe(sp, varying), pts).passed(), "varying sigma gives div P != 0");
}

void determinism(Criterion& c) {
  auto m = example_manifest();
  PipelineOverrides ov;
  ov.seed = 0;
  auto a = emit_report(run_pipeline(m, available_analyses(), ov), ReportFormat::Structured);
  auto b = emit_report(run_pipeline(m, available_analyses(), ov), ReportFormat::Structured);
  c.require(!a.empty() && a == b, "structured reports differ");
}

} // namespace

int main() {
  struct Entry {
    int id;
    std::string title;
    std::function<void(Criterion&, std::string&)> run;
  };
  std::vector<Entry> entries = {
      {1, "Christoffel symbols of the example spacetime", [](Criterion& c, std::string&) { christoffel_golden(c); }},
      {2, "Ricci tensor under both conventions, r = 0", [](Criterion& c, std::string&) { ricci_reproduction(c); }},
      {3, "structure audit of the example spacetime", [](Criterion& c, std::string&) { structure_audit(c); }},
      {4, "identity suite on four charts, rational and float", identity_suite_check},
      {5, "MSQE round trip on 100 constructions and Einstein input", [](Criterion& c, std::string&) { msqe_round_trip(c); }},
      {6, "soliton specialization table on 100 inputs", [](Criterion& c, std::string&) { specialization_rows(c); }},
      {7, "vector-field classifier", [](Criterion& c, std::string&) { vector_fields(c); }},
      {8, "physics layer", [](Criterion& c, std::string&) { physics_layer(c); }},
      {9, "deterministic structured report", [](Criterion& c, std::string&) { determinism(c); }},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    std::string note;
    try {
      e.run(c, note);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    fmt::print("criterion {}: {} {}{}\n", e.id, ok ? "PASS" : "FAIL", e.title, note.empty() ? "" : " (" + note + ")");
    for (std::size_t k = 0; k < c.failures.size() && k < 10; ++k) fmt::print("    {}\n", c.failures[k]);
  }
  fmt::print("{} of {} criteria passed\n", entries.size() - static_cast<std::size_t>(failed), entries.size());
  return failed == 0 ? 0 : 1;
}
