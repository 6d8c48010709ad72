#include "curvlab/report/manifest.hpp"

#include "curvlab/expr/parser.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace curvlab {

using nlohmann::json;

ManifestError::ManifestError(std::string field, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(field.empty() ? message : field + ": " + message),
      field_(std::move(field)),
      position_(position) {}

namespace {

std::string join(const std::string& parent, const std::string& key) { return parent.empty() ? key : parent + "." + key; }

void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ManifestError(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ManifestError(join(path, key), "unknown field");
  }
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  const json* v = find(obj, key);
  if (!v) throw ManifestError(join(path, key), "required field missing");
  return *v;
}

std::string as_text(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ManifestError(path, "expected an expression string");
}

Expr expression(const json& v, const std::string& path, const std::vector<std::string>& coords) {
  std::string text = as_text(v, path);
  try {
    return parse_expr(text, coords);
  } catch (const ParseError& e) {
    throw ManifestError(path, e.what(), e.position());
  } catch (const std::exception& e) {
    throw ManifestError(path, e.what());
  }
}

Rational rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (!v.is_string()) throw ManifestError(path, "expected an integer or a rational string such as \"1/2\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ManifestError(path, e.what());
  }
}

long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ManifestError(path, "expected an integer");
  return static_cast<long>(v.get<long long>());
}

std::vector<Expr> expr_list(const json& v, const std::string& path, const std::vector<std::string>& coords) {
  if (!v.is_array()) throw ManifestError(path, "expected an array of expression strings");
  if (v.size() != coords.size()) {
    throw ManifestError(path, "dimension mismatch: " + std::to_string(v.size()) + " components for dimension " +
                                  std::to_string(coords.size()));
  }
  std::vector<Expr> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(expression(v[i], path + "[" + std::to_string(i) + "]", coords));
  return out;
}

// Lower-triangle map {"g11": .., "g21": .., ...}; "g10_3" form for two-digit indices.
ExprMatrix lower_triangle(const json& obj, const std::string& path, char letter, const std::vector<std::string>& coords) {
  if (!obj.is_object()) throw ManifestError(path, "expected an object of lower-triangle components");
  const std::size_t n = coords.size();
  ExprMatrix m(n, std::vector<Expr>(n));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (const auto& [key, value] : obj.items()) {
    const std::string field = join(path, key);
    std::size_t i = 0, j = 0;
    bool ok = key.size() >= 3 && key[0] == letter;
    if (ok) {
      std::string rest = key.substr(1);
      auto us = rest.find('_');
      try {
        if (us != std::string::npos) {
          i = std::stoul(rest.substr(0, us));
          j = std::stoul(rest.substr(us + 1));
        } else if (rest.size() == 2 && std::isdigit(static_cast<unsigned char>(rest[0])) &&
                   std::isdigit(static_cast<unsigned char>(rest[1]))) {
          i = static_cast<std::size_t>(rest[0] - '0');
          j = static_cast<std::size_t>(rest[1] - '0');
        } else {
          ok = false;
        }
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) throw ManifestError(field, std::string("expected a key like \"") + letter + "21\"");
    if (i < 1 || j < 1 || i > n || j > n) {
      throw ManifestError(field, "dimension mismatch: index out of range 1.." + std::to_string(n));
    }
    if (j > i) {
      throw ManifestError(field, std::string("upper-triangle key; give ") + letter + std::to_string(i) + std::to_string(j) +
                                     " as " + letter + std::to_string(j) + std::to_string(i));
    }
    --i;
    --j;
    m[i][j] = m[j][i] = expression(value, field, coords);
    seen[i][j] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (!seen[i][j]) {
        throw ManifestError(join(path, letter + std::to_string(i + 1) + (n > 9 ? "_" : "") + std::to_string(j + 1)),
                            "lower-triangle component missing");
      }
    }
  }
  return m;
}

int sign_field(const json& v, const std::string& path) {
  long e = integer(v, path);
  if (e != 1 && e != -1) throw ManifestError(path, "must be 1 or -1");
  return static_cast<int>(e);
}

std::vector<std::string> coordinates(const json& root, std::size_t n) {
  const json* c = find(root, "coordinates");
  if (!c) return default_coords(n);
  if (!c->is_array()) throw ManifestError("coordinates", "expected an array of names");
  if (c->size() != n) {
    throw ManifestError("coordinates", "dimension mismatch: " + std::to_string(c->size()) + " names for dimension " +
                                           std::to_string(n));
  }
  std::vector<std::string> out;
  std::set<std::string> unique;
  for (std::size_t i = 0; i < c->size(); ++i) {
    const std::string path = "coordinates[" + std::to_string(i) + "]";
    if (!(*c)[i].is_string()) throw ManifestError(path, "expected a string");
    std::string name = (*c)[i].get<std::string>();
    bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char ch : name) ident = ident && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    if (!ident || name == "exp") throw ManifestError(path, "not a valid coordinate name: \"" + name + "\"");
    if (!unique.insert(name).second) throw ManifestError(path, "duplicate coordinate \"" + name + "\"");
    out.push_back(std::move(name));
  }
  return out;
}

MsqeInput structure_block(const json& obj, const std::vector<std::string>& coords) {
  const std::string path = "structure";
  only_keys(obj, path, {"xi1", "xi2", "A", "B", "D", "psi1", "psi2", "psi3", "psi4", "psi5", "eps1", "eps2"});
  MsqeInput in;
  for (const auto& [key, slot] : {std::pair{"xi1", &in.xi1}, {"xi2", &in.xi2}, {"A", &in.A}, {"B", &in.B}}) {
    if (const json* v = find(obj, key)) *slot = expr_list(*v, join(path, key), coords);
  }
  if (!in.xi1 && !in.A) throw ManifestError(join(path, "xi1"), "give xi1 or its 1-form A");
  if (!in.xi2 && !in.B) throw ManifestError(join(path, "xi2"), "give xi2 or its 1-form B");
  const std::size_t n = coords.size();
  in.D = find(obj, "D") ? lower_triangle(obj["D"], join(path, "D"), 'd', coords)
                        : ExprMatrix(n, std::vector<Expr>(n));
  int given = 0;
  for (int k = 1; k <= 5; ++k) given += find(obj, "psi" + std::to_string(k)) ? 1 : 0;
  if (given != 0 && given != 5) {
    for (int k = 1; k <= 5; ++k) {
      const std::string key = "psi" + std::to_string(k);
      if (!find(obj, key)) throw ManifestError(join(path, key), "psi1..psi5 must be given together");
    }
  }
  if (given == 5) {
    std::array<Expr, 5> psi;
    for (int k = 0; k < 5; ++k) {
      const std::string key = "psi" + std::to_string(k + 1);
      psi[static_cast<std::size_t>(k)] = expression(obj[key], join(path, key), coords);
    }
    in.psi = psi;
  }
  if (const json* v = find(obj, "eps1")) in.eps1 = sign_field(*v, join(path, "eps1"));
  if (const json* v = find(obj, "eps2")) in.eps2 = sign_field(*v, join(path, "eps2"));
  return in;
}

PhysicsConfig physics_block(const json& obj, const std::vector<std::string>& coords) {
  only_keys(obj, "physics", {"kappa", "sigma"});
  PhysicsConfig cfg;
  if (const json* v = find(obj, "kappa")) cfg.kappa = rational(*v, "physics.kappa");
  if (cfg.kappa == 0) throw ManifestError("physics.kappa", "must be nonzero");
  cfg.sigma = expression(require(obj, "physics", "sigma"), "physics.sigma", coords);
  return cfg;
}

SolitonInput soliton_block(const json& obj, const std::vector<std::string>& coords) {
  only_keys(obj, "soliton", {"U", "rho", "lambda"});
  SolitonInput s;
  s.U = expr_list(require(obj, "soliton", "U"), "soliton.U", coords);
  if (const json* v = find(obj, "rho")) s.rho = rational(*v, "soliton.rho");
  if (const json* v = find(obj, "lambda")) s.lambda = rational(*v, "soliton.lambda");
  return s;
}

ManifestOptions options_block(const json& obj) {
  only_keys(obj, "options", {"convention", "mode", "sample_box", "seed", "samples"});
  ManifestOptions o;
  if (const json* v = find(obj, "convention")) {
    std::string c = v->is_string() ? v->get<std::string>() : "";
    if (c == "reversed") {
      o.convention = Convention::reversed();
    } else if (c == "textbook") {
      o.convention = Convention::textbook();
    } else {
      throw ManifestError("options.convention", "expected \"reversed\" or \"textbook\"");
    }
  }
  if (const json* v = find(obj, "mode")) {
    std::string m = v->is_string() ? v->get<std::string>() : "";
    if (m == "rational") {
      o.mode = EvalMode::Rational;
    } else if (m == "float") {
      o.mode = EvalMode::Float;
    } else {
      throw ManifestError("options.mode", "expected \"rational\" or \"float\"");
    }
  }
  if (const json* v = find(obj, "sample_box")) {
    if (!v->is_array() || v->size() != 2) throw ManifestError("options.sample_box", "expected [lo, hi]");
    o.box.lo = rational((*v)[0], "options.sample_box[0]");
    o.box.hi = rational((*v)[1], "options.sample_box[1]");
    if (!(o.box.lo < o.box.hi)) throw ManifestError("options.sample_box", "lo must be below hi");
  }
  if (const json* v = find(obj, "seed")) {
    long s = integer(*v, "options.seed");
    if (s < 0) throw ManifestError("options.seed", "must be non-negative");
    o.seed = static_cast<std::uint64_t>(s);
  }
  if (const json* v = find(obj, "samples")) {
    long s = integer(*v, "options.samples");
    if (s < 1 || s > 1000) throw ManifestError("options.samples", "must be between 1 and 1000");
    o.samples = static_cast<std::size_t>(s);
  }
  return o;
}

} // namespace

ManifoldManifest parse_manifest(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError("", std::string("invalid JSON: ") + e.what(), e.byte);
  }
  only_keys(root, "", {"$schema", "name", "dimension", "coordinates", "metric", "structure", "physics", "soliton",
                       "options"});
  const json& schema = require(root, "", "$schema");
  if (!schema.is_string() || schema.get<std::string>() != kManifestSchema) {
    throw ManifestError("$schema", "expected \"" + std::string(kManifestSchema) + "\"");
  }
  ManifoldManifest m;
  const json& name = require(root, "", "name");
  if (!name.is_string()) throw ManifestError("name", "expected a string");
  m.name = name.get<std::string>();
  long n = integer(require(root, "", "dimension"), "dimension");
  if (n < 2 || n > 16) throw ManifestError("dimension", "must be between 2 and 16");
  m.coords = coordinates(root, static_cast<std::size_t>(n));
  m.metric = lower_triangle(require(root, "", "metric"), "metric", 'g', m.coords);
  if (const json* v = find(root, "structure")) m.structure = structure_block(*v, m.coords);
  if (const json* v = find(root, "physics")) m.physics = physics_block(*v, m.coords);
  if (const json* v = find(root, "soliton")) m.soliton = soliton_block(*v, m.coords);
  if (const json* v = find(root, "options")) m.options = options_block(*v);
  try {
    (void)m.chart();
  } catch (const std::invalid_argument& e) {
    throw ManifestError("metric", e.what());
  }
  return m;
}

std::filesystem::path resolve_manifest_path(const std::filesystem::path& path) {
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  if (const char* dir = std::getenv(kManifestDirEnv); dir && *dir) {
    auto candidate = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return path;
}

ManifoldManifest load_manifest(const std::filesystem::path& path) {
  auto resolved = resolve_manifest_path(path);
  std::ifstream in(resolved, std::ios::binary);
  if (!in) throw ManifestError("", "cannot open manifest " + resolved.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

} // namespace curvlab
