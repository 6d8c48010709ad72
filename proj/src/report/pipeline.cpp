#include "curvlab/derived/identities.hpp"
#include "curvlab/expr/simplify.hpp"
#include "curvlab/report/report.hpp"

#include <algorithm>

namespace curvlab {

using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kAnalyses = {
    "curvature",  "derived",       "physics",          "frame",          "msqe-fit", "quasi-constant",
    "recurrence", "vector-fields", "structure-checks", "pseudosymmetry", "soliton",  "identities"};

struct Context {
  const ManifoldManifest& manifest;
  const CurvatureBundle& b;
  std::span<const Point> points;
  EvalMode mode;
  std::optional<MsqeStructure> structure;
  std::string structure_error;
};

std::string str(const Expr& e, const Context& c) { return to_string(e, c.manifest.coords); }

ordered_json num(const NumericValue& v) {
  ordered_json j = ordered_json::object();
  if (v.is_exact()) {
    j["exact"] = to_string(v.exact());
  } else {
    j["float"] = v.to_double();
  }
  return j;
}

ordered_json residual(const ResidualCheck& r) {
  return ordered_json{{"verdict", r.verdict()},
                      {"mode", r.exact ? "exact" : "float"},
                      {"symbolic_zero", r.symbolic_zero},
                      {"max_abs", num(r.max_abs)},
                      {"max_relative", r.max_relative},
                      {"points_used", r.points_used},
                      {"points_skipped", r.points_skipped}};
}

std::string residual_text(const ResidualCheck& r) {
  std::string s = r.verdict();
  if (r.symbolic_zero) return s + " (symbolic zero)";
  if (r.passed() && r.exact) {
    s += " (0 at " + std::to_string(r.points_used) + " points";
  } else if (r.passed()) {
    s += " (max rel " + NumericValue(r.max_relative).to_string() + " at " + std::to_string(r.points_used) + " points";
  } else {
    s += " (max |r| = " + r.max_abs.to_string();
  }
  if (r.points_skipped) s += ", " + std::to_string(r.points_skipped) + " skipped";
  return s + ")";
}

ordered_json fit(const FitResult& f) {
  ordered_json j;
  j["verdict"] = f.verdict();
  j["mode"] = f.exact ? "exact" : "float";
  j["rank"] = f.rank;
  j["point_independent"] = f.point_independent;
  ordered_json coef = ordered_json::object();
  auto first = f.coefficients();
  for (std::size_t k = 0; k < first.size(); ++k) coef[f.names[k]] = num(first[k]);
  j["coefficients"] = coef;
  ordered_json per = ordered_json::array();
  for (const auto& p : f.points) {
    ordered_json row = ordered_json::array();
    for (const auto& v : p.coefficients) row.push_back(num(v));
    per.push_back(row);
  }
  j["per_point"] = per;
  j["max_residual"] = num(f.max_residual);
  j["max_relative"] = f.max_relative;
  j["points_used"] = f.points.size();
  j["points_skipped"] = f.points_skipped;
  j["warnings"] = f.warnings;
  return j;
}

std::string fit_text(const FitResult& f) {
  std::string s = f.verdict();
  auto first = f.coefficients();
  if (!first.empty() && f.passed()) {
    s += " (";
    for (std::size_t k = 0; k < first.size(); ++k) {
      s += (k ? ", " : "") + f.names[k] + " = " + first[k].to_string();
    }
    s += f.point_independent ? "" : " at the first point";
    s += ")";
  } else if (!f.passed()) {
    s += " (max residual " + f.max_residual.to_string() + ")";
  }
  return s;
}

void note_skips(ReportSection& sec, const std::string& label, const ResidualCheck& r) {
  if (r.points_skipped) {
    sec.warnings.push_back(label + ": " + std::to_string(r.points_skipped) +
                           " sample points skipped where evaluation failed");
  }
}

void note_skips(ReportSection& sec, const std::string& label, const FitResult& f) {
  if (f.points_skipped) {
    sec.warnings.push_back(label + ": " + std::to_string(f.points_skipped) +
                           " sample points skipped where evaluation failed");
  }
}

std::string join_index(std::span<const std::size_t> idx) {
  std::string s;
  for (auto i : idx) s += std::to_string(i + 1);
  return s;
}

// Nonzero components of a (0,2) tensor with i <= j, or a (0,4) tensor with
// i < j, k < l, (ij) <= (kl).
ordered_json nonzero_components(const TensorField& t, const Context& c, ReportTable* table, const std::string& prefix) {
  ordered_json j = ordered_json::object();
  const std::size_t n = t.dim();
  auto emit = [&](std::span<const std::size_t> idx) {
    Expr v = simplify(t[idx]);
    if (v.is_zero()) return;
    std::string key = join_index(idx);
    j[key] = str(v, c);
    if (table) table->rows.emplace_back(prefix + key, str(v, c));
  };
  if (t.rank() == 2) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const std::size_t idx[2] = {a, b};
        emit(idx);
      }
    }
  } else if (t.rank() == 4) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t k = a; k < n; ++k) {
          for (std::size_t l = k + 1; l < n; ++l) {
            if (k == a && l < b) continue;
            const std::size_t idx[4] = {a, b, k, l};
            emit(idx);
          }
        }
      }
    }
  } else {
    for_each_index(n, t.rank(), emit);
  }
  if (table && table->rows.empty()) table->rows.emplace_back("all components", "0");
  return j;
}

ReportSection skipped(const std::string& name, const std::string& reason) {
  ReportSection s;
  s.name = name;
  s.status = "skipped";
  s.reason = reason;
  return s;
}

bool needs_structure(const Context& c, ReportSection& out, const std::string& name) {
  if (!c.manifest.structure) {
    out = skipped(name, "missing input: structure block");
    return false;
  }
  if (!c.structure) {
    out = skipped(name, "invalid structure: " + c.structure_error);
    return false;
  }
  return true;
}

ReportSection curvature_section(const Context& c) {
  ReportSection sec;
  sec.name = "curvature";
  const auto& b = c.b;
  const std::size_t n = b.dim();
  sec.data["dimension"] = n;
  sec.data["coordinates"] = c.manifest.coords;
  ReportTable metric{"Metric", {}}, gamma{"Christoffel symbols", {}}, riem{"Riemann tensor, lowered", {}},
      ric{"Ricci tensor", {}}, scal{"Scalar curvature", {}};
  sec.data["metric"] = nonzero_components(b.metric, c, &metric, "g_");
  ordered_json g = ordered_json::object();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        Expr v = simplify(b.christoffel.at({k, i, j}));
        if (v.is_zero()) continue;
        std::string key = std::to_string(k + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
        g[key] = str(v, c);
        gamma.rows.emplace_back("Γ^" + key, str(v, c));
      }
    }
  }
  if (gamma.rows.empty()) gamma.rows.emplace_back("all components", "0");
  sec.data["christoffel"] = g;
  sec.data["riemann"] = nonzero_components(b.riemann, c, &riem, "R_");
  sec.data["ricci"] = nonzero_components(b.ricci, c, &ric, "Ric_");
  sec.data["scalar"] = str(simplify(b.scalar), c);
  scal.rows.emplace_back("r", str(simplify(b.scalar), c));
  sec.tables = {metric, gamma, riem, ric, scal};
  return sec;
}

ReportSection derived_section(const Context& c) {
  ReportSection sec;
  sec.name = "derived";
  ReportTable t{"Curvature tensors", {}};
  auto add = [&](const std::string& key, const std::string& label, const TensorField& T) {
    auto check = check_zero(T, c.points, c.mode);
    note_skips(sec, key, check);
    sec.data[key] = {{"vanishes", residual(check)}, {"components", nonzero_components(T, c, nullptr, "")}};
    t.rows.emplace_back(label + " = 0", residual_text(check));
  };
  const std::size_t n = c.b.dim();
  if (n >= 4) {
    add("conformal", "C", conformal_tensor(c.b));
  } else {
    sec.data["conformal"] = "not applicable below dimension 4";
    t.rows.emplace_back("C = 0", "not applicable");
  }
  if (n >= 3) {
    add("conharmonic", "conharmonic", conharmonic_tensor(c.b));
  } else {
    sec.data["conharmonic"] = "not applicable below dimension 3";
    t.rows.emplace_back("conharmonic = 0", "not applicable");
  }
  add("concircular", "concircular", concircular_tensor(c.b));
  sec.tables.push_back(t);
  return sec;
}

ReportSection physics_section(const Context& c) {
  if (!c.manifest.physics) return skipped("physics", "missing input: physics block");
  ReportSection sec;
  sec.name = "physics";
  const auto& cfg = *c.manifest.physics;
  const std::size_t n = c.b.dim();
  sec.data["kappa"] = to_string(cfg.kappa);
  sec.data["sigma"] = str(cfg.sigma, c);
  ReportTable T{"Energy-momentum tensor", {}}, checks{"Space-matter checks", {}};
  TensorField t = energy_momentum(c.b, cfg);
  sec.data["energy_momentum"] = nonzero_components(t, c, &T, "T_");
  TensorField P = space_matter(c.b, t, cfg);
  auto p_zero = check_zero(P, c.points, c.mode);
  sec.data["space_matter"] = {{"vanishes", residual(p_zero)}, {"components", nonzero_components(P, c, nullptr, "")}};
  checks.rows.emplace_back("P = 0", residual_text(p_zero));
  TensorField divP = space_matter_divergence_efe(c.b, cfg);
  auto div_zero = check_zero(divP, c.points, c.mode);
  sec.data["divergence"] = {{"vanishes", residual(div_zero)}, {"components", nonzero_components(divP, c, nullptr, "")}};
  checks.rows.emplace_back("div P = 0", residual_text(div_zero));
  TensorField traced = contract(divP, 1, 2, c.b.inverse);
  TensorField dr = gradient(c.b.scalar, n), ds = gradient(cfg.sigma, n);
  ResidualCheck contraction;
  contraction.symbolic_zero = true;
  const Expr ns = Expr::integer(static_cast<long>(n) - 1);
  const Expr nr = Expr::constant(make_rational(4 - static_cast<long>(n), 4));
  for (std::size_t i = 0; i < n; ++i) {
    contraction.merge(check_zero(std::vector<Expr>{traced.at({i}), ns * ds.at({i}), -(nr * dr.at({i}))}, c.points, c.mode));
  }
  sec.data["divergence_trace_identity"] = residual(contraction);
  checks.rows.emplace_back("trace of div P identity", residual_text(contraction));
  if (div_zero.passed()) {
    auto grad = check_zero(ds, c.points, c.mode);
    sec.data["energy_density_constant"] = residual(grad);
    checks.rows.emplace_back("d sigma = 0", residual_text(grad));
  } else {
    sec.data["energy_density_constant"] = "not applicable: div P does not vanish";
    checks.rows.emplace_back("d sigma = 0", "not applicable (div P does not vanish)");
  }
  note_skips(sec, "P", p_zero);
  note_skips(sec, "div P", div_zero);
  sec.tables = {T, checks};
  return sec;
}

ReportSection frame_section(const Context& c) {
  ReportSection sec;
  if (!needs_structure(c, sec, "frame")) return sec;
  sec.name = "frame";
  const auto& s = *c.structure;
  FrameAudit a = audit_frame(c.b, s, c.points, c.mode);
  sec.data["eps1"] = s.eps1;
  sec.data["eps2"] = s.eps2;
  sec.data["A.A"] = str(a.a_dot_a, c);
  sec.data["B.B"] = str(a.b_dot_b, c);
  sec.data["A.B"] = str(a.a_dot_b, c);
  sec.data["trace_D"] = str(a.trace_D, c);
  ReportTable t{"Frame audit", {}};
  for (const auto& [key, label, check] : std::vector<std::tuple<std::string, std::string, const ResidualCheck*>>{
           {"duality_A", "A = g(xi1, .)", &a.duality_A},
           {"duality_B", "B = g(xi2, .)", &a.duality_B},
           {"norm_A", "A.A = eps1", &a.norm_A},
           {"norm_B", "B.B = eps2", &a.norm_B},
           {"orthogonality", "A.B = 0", &a.orthogonality},
           {"D_symmetric", "D symmetric", &a.d_symmetry},
           {"D_xi1", "D(., xi1) = 0", &a.d_xi1},
           {"D_trace_free", "tr D = 0", &a.trace_D_zero}}) {
    sec.data[key] = residual(*check);
    t.rows.emplace_back(label, residual_text(*check));
    note_skips(sec, key, *check);
  }
  t.rows.emplace_back("tr D", str(a.trace_D, c));
  sec.warnings.insert(sec.warnings.end(), a.warnings.begin(), a.warnings.end());
  sec.tables.push_back(t);
  return sec;
}

ReportSection msqe_section(const Context& c) {
  ReportSection sec;
  if (!needs_structure(c, sec, "msqe-fit")) return sec;
  sec.name = "msqe-fit";
  MsqeFit f = fit_msqe(c.b, *c.structure, c.points, c.mode);
  sec.data["fit"] = fit(f.fit);
  note_skips(sec, "fit", f.fit);
  sec.warnings.insert(sec.warnings.end(), f.fit.warnings.begin(), f.fit.warnings.end());
  ReportTable t{"Fitted scalars", {}};
  t.rows.emplace_back("psi1..psi5", fit_text(f.fit));
  sec.tables.push_back(t);
  if (!f.pinned.empty()) {
    ReportTable p{"Ric minus decomposition with the given psi", {}};
    ordered_json pinned = ordered_json::object();
    for (const auto& cr : f.pinned) {
      pinned[cr.label] = {{"residual", str(cr.residual, c)}, {"check", residual(cr.check)}};
      p.rows.emplace_back("Ric_" + cr.label, str(cr.residual, c) + "   [" + cr.check.verdict() + "]");
    }
    sec.data["pinned"] = pinned;
    sec.tables.push_back(p);
  }
  if (f.trace) {
    const auto& tr = *f.trace;
    sec.data["trace"] = {
        {"riemannian", {{"residual", str(tr.riemannian, c)}, {"check", residual(tr.riemannian_check)}}},
        {"signature_aware", {{"residual", str(tr.signature_aware, c)}, {"check", residual(tr.signature_check)}}},
        {"lorentzian", {{"residual", str(tr.lorentzian, c)}, {"check", residual(tr.lorentzian_check)}}}};
    ReportTable t2{"Trace identity residuals", {}};
    t2.rows.emplace_back("r - (n psi1 + psi2 + psi3)", str(tr.riemannian, c));
    t2.rows.emplace_back("signature-aware", str(tr.signature_aware, c));
    t2.rows.emplace_back("r - (4 psi1 - psi2 + psi3)", str(tr.lorentzian, c));
    sec.tables.push_back(t2);
  }
  return sec;
}

ReportSection quasi_constant_section(const Context& c) {
  ReportSection sec;
  if (!needs_structure(c, sec, "quasi-constant")) return sec;
  sec.name = "quasi-constant";
  auto q = check_quasi_constant_curvature(c.b, *c.structure, c.manifest.physics, c.points, c.mode);
  sec.data["fit"] = fit(q.fit);
  note_skips(sec, "fit", q.fit);
  ReportTable t{"Quasi-constant curvature", {}};
  t.rows.emplace_back("f1..f5", fit_text(q.fit));
  if (q.space_matter_zero) {
    sec.data["space_matter_zero"] = residual(*q.space_matter_zero);
    t.rows.emplace_back("P = 0", residual_text(*q.space_matter_zero));
  }
  if (q.predicted) {
    ordered_json pred = ordered_json::array();
    for (const auto& e : *q.predicted) pred.push_back(str(e, c));
    sec.data["predicted"] = pred;
    ordered_json gap = ordered_json::array();
    for (const auto& g : q.coefficient_gap) gap.push_back(num(g));
    sec.data["coefficient_gap"] = gap;
  }
  if (q.predicted_residual) {
    sec.data["predicted_residual"] = residual(*q.predicted_residual);
    t.rows.emplace_back("R with predicted f", residual_text(*q.predicted_residual));
  }
  sec.warnings.insert(sec.warnings.end(), q.fit.warnings.begin(), q.fit.warnings.end());
  sec.tables.push_back(t);
  return sec;
}

ReportSection recurrence_section(const Context& c) {
  ReportSection sec;
  sec.name = "recurrence";
  auto r = fit_ricci_recurrence(c.b, c.points, c.mode);
  sec.data["classification"] = to_string(r.classification);
  sec.data["degenerate"] = r.degenerate;
  sec.data["nabla_ric_zero"] = residual(r.nabla_ric_zero);
  sec.data["recurrent"] = fit(r.recurrent);
  sec.data["generalized"] = fit(r.generalized);
  ReportTable t{"Ricci recurrence", {}};
  t.rows.emplace_back("classification", to_string(r.classification));
  t.rows.emplace_back("nabla Ric = 0", residual_text(r.nabla_ric_zero));
  t.rows.emplace_back("recurrent", fit_text(r.recurrent));
  t.rows.emplace_back("generalized", fit_text(r.generalized));
  if (r.degenerate) sec.warnings.push_back("Ric is proportional to g: gamma and delta are not separable");
  sec.tables.push_back(t);
  return sec;
}

ReportSection vector_field_section(const Context& c) {
  ReportSection sec;
  sec.name = "vector-fields";
  std::vector<std::pair<std::string, std::vector<Expr>>> fields;
  if (c.structure) {
    fields.emplace_back("xi1", c.structure->xi1);
    fields.emplace_back("xi2", c.structure->xi2);
  }
  if (c.manifest.soliton) fields.emplace_back("U", c.manifest.soliton->U);
  if (fields.empty()) return skipped("vector-fields", "missing input: structure or soliton block");
  for (const auto& [name, U] : fields) {
    ReportTable t{"Vector field " + name, {}};
    try {
      auto v = classify_vector_field(c.b, U, c.points, c.mode);
      ordered_json j;
      j["parallel"] = residual(v.parallel);
      j["concircular"] = fit(v.concircular);
      j["torse_forming"] = fit(v.torse_forming);
      j["geodesic"] = residual(v.geodesic);
      if (v.unit_consistency) j["unit_consistency"] = num(*v.unit_consistency);
      sec.data[name] = j;
      t.rows.emplace_back("parallel", residual_text(v.parallel));
      t.rows.emplace_back("concircular", fit_text(v.concircular));
      t.rows.emplace_back("torse-forming", fit_text(v.torse_forming));
      t.rows.emplace_back("geodesic", residual_text(v.geodesic));
    } catch (const std::invalid_argument& e) {
      sec.data[name] = std::string("not classified: ") + e.what();
      t.rows.emplace_back("status", std::string("not classified: ") + e.what());
    }
    sec.tables.push_back(t);
  }
  return sec;
}

ReportSection structure_checks_section(const Context& c) {
  ReportSection sec;
  if (!needs_structure(c, sec, "structure-checks")) return sec;
  sec.name = "structure-checks";
  const auto& s = *c.structure;
  ReportTable t{"Structure checks", {}};
  auto codazzi = codazzi_check(c.b, s.D, c.points, c.mode);
  sec.data["codazzi_D"] = residual(codazzi);
  t.rows.emplace_back("D Codazzi", residual_text(codazzi));
  auto eig = eigenvector_check(c.b, s.D, s.xi2, c.points, c.mode);
  ordered_json e;
  if (eig.eigenvalue) e["eigenvalue"] = str(*eig.eigenvalue, c);
  if (eig.null_fit) e["null_fit"] = fit(*eig.null_fit);
  e["null_vector"] = eig.null_vector;
  e["residual"] = residual(eig.residual);
  sec.data["xi2_eigenvector_of_D"] = e;
  t.rows.emplace_back("D(xi2, xi2)/g(xi2, xi2)", eig.eigenvalue ? str(*eig.eigenvalue, c) : "undefined");
  t.rows.emplace_back("xi2 eigenvector of D", residual_text(eig.residual));
  auto dA = oneform_closedness(s.A, c.points, c.mode);
  auto dB = oneform_closedness(s.B, c.points, c.mode);
  sec.data["dA_zero"] = residual(dA);
  sec.data["dB_zero"] = residual(dB);
  t.rows.emplace_back("dA = 0", residual_text(dA));
  t.rows.emplace_back("dB = 0", residual_text(dB));
  if (s.psi) {
    auto link = closedness_linkage(s, c.points, c.mode);
    sec.data["closedness_linkage"] = residual(link);
    t.rows.emplace_back("(psi1 + psi2) dA + psi4 dB = 0", residual_text(link));
  }
  sec.tables.push_back(t);
  return sec;
}

ReportSection pseudosymmetry_section(const Context& c) {
  ReportSection sec;
  if (!needs_structure(c, sec, "pseudosymmetry")) return sec;
  if (!c.structure->psi) return skipped("pseudosymmetry", "missing input: psi1..psi5");
  sec.name = "pseudosymmetry";
  PseudosymmetryReport r;
  try {
    r = pseudosymmetry_analysis(c.b, *c.structure, c.points, c.mode);
  } catch (const std::invalid_argument& e) {
    return skipped("pseudosymmetry", e.what());
  }
  ordered_json pts = ordered_json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"F_Ric", p.f_ric ? num(*p.f_ric) : ordered_json(nullptr)}, {"residual", num(p.residual)}});
  }
  sec.data["points"] = pts;
  sec.data["m"] = str(r.m, c);
  ordered_json E = ordered_json::array();
  for (const auto& x : r.E) E.push_back(str(x, c));
  sec.data["E"] = E;
  sec.data["eigenvalue_case"] = r.eigenvalue_case;
  sec.data["eigen_residual"] = residual(r.eigen_residual);
  sec.data["identity_residual"] = residual(r.identity_residual);
  sec.data["vanishing_residual"] = residual(r.vanishing_residual);
  sec.data["duality_residual"] = residual(r.duality_residual);
  ReportTable t{"Ricci pseudosymmetry", {}};
  t.rows.emplace_back("m", str(r.m, c));
  t.rows.emplace_back("xi2 eigenvector with m", residual_text(r.eigen_residual));
  t.rows.emplace_back("R(X,Y,xi1,xi2) identity", residual_text(r.identity_residual));
  t.rows.emplace_back("R(X,Y,xi1,xi2) = 0", residual_text(r.vanishing_residual));
  t.rows.emplace_back("E dual to theta", residual_text(r.duality_residual));
  sec.warnings.insert(sec.warnings.end(), r.warnings.begin(), r.warnings.end());
  sec.tables.push_back(t);
  return sec;
}

std::string lambda_label(SolitonClass cls, const std::optional<NumericValue>& lambda) {
  std::string s = to_string(cls);
  if (lambda && cls != SolitonClass::Indeterminate) s += " (λ = " + lambda->to_string() + ")";
  return s;
}

ReportSection soliton_section(const Context& c) {
  if (!c.manifest.soliton) return skipped("soliton", "missing input: soliton block");
  ReportSection sec;
  sec.name = "soliton";
  const auto& in = *c.manifest.soliton;
  RBSolitonConfig cfg{in.U, in.rho, in.lambda};
  std::optional<std::array<Expr, 5>> psi;
  if (c.structure) psi = c.structure->psi;
  auto rep = soliton_residual(c.b, cfg, c.points, c.mode, psi);
  sec.data["name"] = rep.name;
  sec.data["rho"] = to_string(in.rho);
  sec.data["half_lie_derivative"] = nonzero_components(rep.half_lie, c, nullptr, "");
  sec.data["div_U"] = str(rep.div_U, c);
  if (rep.residual) sec.data["residual"] = residual(*rep.residual);
  if (rep.combination) sec.data["lambda_plus_rho_r"] = fit(*rep.combination);
  sec.data["separable"] = rep.separable;
  sec.data["lambda"] = rep.lambda ? num(*rep.lambda) : ordered_json(nullptr);
  sec.data["classification"] = to_string(rep.classification);
  if (rep.structural_lambda) sec.data["structural_lambda"] = str(*rep.structural_lambda, c);
  ReportTable t{"Ricci-Bourguignon soliton", {}};
  t.rows.emplace_back("type", rep.name.empty() ? "rho = " + to_string(in.rho) : rep.name);
  t.rows.emplace_back("div U", str(rep.div_U, c));
  if (rep.residual) t.rows.emplace_back("residual", residual_text(*rep.residual));
  if (rep.combination) t.rows.emplace_back("lambda + rho r", fit_text(*rep.combination));
  if (rep.structural_lambda) t.rows.emplace_back("lambda from psi", str(*rep.structural_lambda, c));
  sec.lines.push_back("classification: " + lambda_label(rep.classification, rep.lambda));
  sec.warnings.insert(sec.warnings.end(), rep.diagnostics.begin(), rep.diagnostics.end());
  sec.tables.push_back(t);

  if (psi) {
    auto p = [&](int k) { return simplify((*psi)[static_cast<std::size_t>(k)]); };
    if (p(0).is_constant() && p(1).is_constant() && p(2).is_constant()) {
      ReportTable s{"Named specializations", {}};
      ordered_json rows = ordered_json::array();
      for (const auto& row : specialization_table(p(0).value(), p(1).value(), p(2).value(), c.b.dim())) {
        rows.push_back({{"name", row.name},
                        {"rho", to_string(row.rho)},
                        {"lambda", to_string(row.lambda)},
                        {"classification", to_string(row.classification)}});
        s.rows.emplace_back(row.name, to_string(row.classification) + " (λ = " + to_string(row.lambda) + ")");
      }
      sec.data["specializations"] = rows;
      sec.tables.push_back(s);
    }
  }

  if (c.structure && c.structure->psi) {
    auto tf = torse_forming_consequences(c.b, *c.structure, cfg, c.points, c.mode);
    ordered_json j;
    j["applicable"] = tf.applicable;
    ReportTable s{"Torse-forming generator", {}};
    if (tf.applicable) {
      j["geodesic"] = residual(tf.geodesic);
      j["psi4_zero"] = residual(tf.psi4_zero);
      j["predicted_f"] = str(tf.predicted_f, c);
      j["f_gap"] = num(tf.f_gap);
      j["f_matches"] = tf.f_matches;
      if (tf.lambda_relation) j["lambda_relation"] = residual(*tf.lambda_relation);
      j["xi2_eigenvector"] = residual(tf.eigen.residual);
      s.rows.emplace_back("xi1 geodesic", residual_text(tf.geodesic));
      s.rows.emplace_back("psi4 = 0", residual_text(tf.psi4_zero));
      s.rows.emplace_back("predicted f", str(tf.predicted_f, c));
      s.rows.emplace_back("fitted f matches", tf.f_matches ? "yes" : "no (gap " + tf.f_gap.to_string() + ")");
      s.rows.emplace_back("xi2 eigenvector of D", residual_text(tf.eigen.residual));
    } else {
      s.rows.emplace_back("status", "not applicable (xi1 is not torse-forming)");
    }
    j["diagnostics"] = tf.diagnostics;
    sec.data["torse_forming_generator"] = j;
    sec.tables.push_back(s);
  }

  if (c.b.dim() >= 3) {
    auto ch = conharmonic_flat_consequences(c.b, cfg, c.points, c.mode, psi);
    ordered_json j;
    j["conharmonic_zero"] = residual(ch.conharmonic_zero);
    j["applicable"] = ch.applicable;
    ReportTable s{"Conharmonically flat case", {}};
    s.rows.emplace_back("conharmonic = 0", residual_text(ch.conharmonic_zero));
    if (ch.applicable) {
      j["scalar_zero"] = residual(ch.scalar_zero);
      if (ch.psi_trace) j["psi_trace"] = residual(*ch.psi_trace);
      j["div_U"] = str(ch.div_U, c);
      j["lambda"] = ch.lambda ? num(*ch.lambda) : ordered_json(nullptr);
      if (ch.divergence_relation) j["divergence_relation"] = residual(*ch.divergence_relation);
      if (ch.steady_iff_divergence_free) j["steady_iff_divergence_free"] = *ch.steady_iff_divergence_free;
      j["classification"] = to_string(ch.classification);
      s.rows.emplace_back("r = 0", residual_text(ch.scalar_zero));
      if (ch.divergence_relation) s.rows.emplace_back("div U = n lambda", residual_text(*ch.divergence_relation));
    }
    sec.data["conharmonic_flat"] = j;
    sec.tables.push_back(s);
  }
  return sec;
}

ReportSection identities_section(const Context& c) {
  ReportSection sec;
  sec.name = "identities";
  ReportTable t{"Identity suite", {}};
  for (const auto& r : identity_suite(c.b, c.points, c.mode)) {
    if (!r.applicable) {
      sec.data[r.name] = "not applicable";
      t.rows.emplace_back(r.name, "not applicable in dimension " + std::to_string(c.b.dim()));
      continue;
    }
    sec.data[r.name] = residual(r.check);
    t.rows.emplace_back(r.name, residual_text(r.check));
    note_skips(sec, r.name, r.check);
  }
  sec.tables.push_back(t);
  return sec;
}

} // namespace

const std::vector<std::string>& available_analyses() { return kAnalyses; }

std::vector<std::string> normalize_analyses(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (n == "all") return kAnalyses;
    if (std::find(kAnalyses.begin(), kAnalyses.end(), n) == kAnalyses.end()) {
      throw std::invalid_argument("unknown analysis \"" + n + "\"");
    }
  }
  std::vector<std::string> out;
  for (const auto& a : kAnalyses) {
    if (std::find(names.begin(), names.end(), a) != names.end()) out.push_back(a);
  }
  return out;
}

const ReportSection* AnalysisReport::section(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

AnalysisReport run_pipeline(const ManifoldManifest& manifest, const std::vector<std::string>& analyses,
                            const PipelineOverrides& overrides) {
  AnalysisReport rep;
  rep.manifest = manifest.name;
  rep.convention = overrides.convention.value_or(manifest.options.convention);
  rep.mode = overrides.mode.value_or(manifest.options.mode);
  rep.seed = overrides.seed.value_or(manifest.options.seed);
  rep.box = manifest.options.box;
  const std::size_t n = manifest.dimension();
  rep.points = sample_points(n, rep.seed, rep.box, manifest.options.samples);

  ChartManifold chart(manifest.coords, manifest.metric, rep.convention);
  CurvatureBundle b = compute_curvature(chart);
  Context c{manifest, b, rep.points, rep.mode, std::nullopt, {}};
  if (manifest.structure) {
    try {
      c.structure = complete_structure(*manifest.structure, b);
    } catch (const std::invalid_argument& e) {
      c.structure_error = e.what();
    }
  }

  for (const auto& name : normalize_analyses(analyses)) {
    ReportSection sec;
    try {
      if (name == "curvature") sec = curvature_section(c);
      else if (name == "derived") sec = derived_section(c);
      else if (name == "physics") sec = physics_section(c);
      else if (name == "frame") sec = frame_section(c);
      else if (name == "msqe-fit") sec = msqe_section(c);
      else if (name == "quasi-constant") sec = quasi_constant_section(c);
      else if (name == "recurrence") sec = recurrence_section(c);
      else if (name == "vector-fields") sec = vector_field_section(c);
      else if (name == "structure-checks") sec = structure_checks_section(c);
      else if (name == "pseudosymmetry") sec = pseudosymmetry_section(c);
      else if (name == "soliton") sec = soliton_section(c);
      else if (name == "identities") sec = identities_section(c);
    } catch (const std::invalid_argument& e) {
      sec = skipped(name, std::string("invalid input: ") + e.what());
    } catch (const std::domain_error& e) {
      sec = skipped(name, std::string("invalid input: ") + e.what());
    }
    rep.sections.push_back(std::move(sec));
  }
  return rep;
}

} // namespace curvlab
