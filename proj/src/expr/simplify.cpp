#include "curvlab/expr/simplify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace curvlab {

namespace {

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

// Product of coordinate powers, an optional exp(arg), and sum atoms raised to
// negative powers. `sym` carries no trailing zeros; `sums` is sorted.
struct Monomial {
  std::vector<int> sym;
  PolyPtr exp_arg;
  std::vector<std::pair<PolyPtr, int>> sums;
};

struct Term {
  Monomial mono;
  Rational coef;
};

// Terms sorted by compare_mono, unique monomials, nonzero coefficients.
struct Poly {
  std::vector<Term> terms;
  bool empty() const { return terms.empty(); }
};

int compare_poly(const Poly& a, const Poly& b);

int compare_sym(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int x = i < a.size() ? a[i] : 0;
    int y = i < b.size() ? b[i] : 0;
    if (x != y) return x > y ? -1 : 1;
  }
  return 0;
}

int compare_mono(const Monomial& a, const Monomial& b) {
  if (int c = compare_sym(a.sym, b.sym)) return c;
  if (!a.exp_arg != !b.exp_arg) return a.exp_arg ? 1 : -1;
  if (a.exp_arg) {
    if (int c = compare_poly(*a.exp_arg, *b.exp_arg)) return c;
  }
  std::size_t n = std::min(a.sums.size(), b.sums.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_poly(*a.sums[i].first, *b.sums[i].first)) return c;
    if (a.sums[i].second != b.sums[i].second) return a.sums[i].second > b.sums[i].second ? -1 : 1;
  }
  if (a.sums.size() != b.sums.size()) return a.sums.size() < b.sums.size() ? -1 : 1;
  return 0;
}

int compare_poly(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_mono(a.terms[i].mono, b.terms[i].mono)) return c;
    if (int c = cmp(a.terms[i].coef, b.terms[i].coef)) return c < 0 ? -1 : 1;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

void trim(std::vector<int>& sym) {
  while (!sym.empty() && sym.back() == 0) sym.pop_back();
}

Poly constant_poly(const Rational& c) {
  Poly p;
  if (c != 0) p.terms.push_back({Monomial{}, c});
  return p;
}

Poly single(Monomial m, Rational c) {
  Poly p;
  if (c != 0) p.terms.push_back({std::move(m), std::move(c)});
  return p;
}

// Sorts, merges equal monomials and drops zero coefficients.
Poly from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare_mono(a.mono, b.mono) < 0; });
  Poly out;
  for (auto& t : terms) {
    if (!out.terms.empty() && compare_mono(out.terms.back().mono, t.mono) == 0) {
      out.terms.back().coef += t.coef;
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  std::erase_if(out.terms, [](const Term& t) { return t.coef == 0; });
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out;
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j >= b.terms.size()) {
      out.terms.push_back(a.terms[i++]);
    } else if (i >= a.terms.size()) {
      out.terms.push_back(b.terms[j++]);
    } else {
      int c = compare_mono(a.terms[i].mono, b.terms[j].mono);
      if (c < 0) {
        out.terms.push_back(a.terms[i++]);
      } else if (c > 0) {
        out.terms.push_back(b.terms[j++]);
      } else {
        Rational s = a.terms[i].coef + b.terms[j].coef;
        if (s != 0) out.terms.push_back({a.terms[i].mono, s});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

Poly scale(const Poly& p, const Rational& c) {
  if (c == 0) return {};
  Poly out = p;
  for (auto& t : out.terms) t.coef *= c;
  return out;
}

Poly negate(const Poly& p) { return scale(p, Rational(-1)); }

Poly mul(const Poly& a, const Poly& b);
Poly pow(const Poly& p, int k);
Poly cancel(const Poly& p);

// Expands any sum atoms that ended up with a positive exponent.
Poly normalize(Monomial m, Rational coef) {
  std::vector<std::pair<PolyPtr, int>> positive;
  std::erase_if(m.sums, [&](const auto& s) {
    if (s.second > 0) {
      positive.push_back(s);
      return true;
    }
    return false;
  });
  Poly out = single(std::move(m), std::move(coef));
  for (const auto& [atom, e] : positive) out = mul(out, pow(*atom, e));
  return out;
}

Poly term_product(const Term& a, const Term& b) {
  Monomial m;
  const auto& x = a.mono;
  const auto& y = b.mono;
  m.sym.resize(std::max(x.sym.size(), y.sym.size()), 0);
  for (std::size_t i = 0; i < x.sym.size(); ++i) m.sym[i] += x.sym[i];
  for (std::size_t i = 0; i < y.sym.size(); ++i) m.sym[i] += y.sym[i];
  trim(m.sym);

  if (x.exp_arg && y.exp_arg) {
    Poly arg = cancel(add(*x.exp_arg, *y.exp_arg));
    if (!arg.empty()) m.exp_arg = std::make_shared<const Poly>(std::move(arg));
  } else {
    m.exp_arg = x.exp_arg ? x.exp_arg : y.exp_arg;
  }

  std::size_t i = 0, j = 0;
  bool needs_expansion = false;
  while (i < x.sums.size() || j < y.sums.size()) {
    int c = 0;
    if (i >= x.sums.size()) {
      c = 1;
    } else if (j >= y.sums.size()) {
      c = -1;
    } else {
      c = compare_poly(*x.sums[i].first, *y.sums[j].first);
    }
    if (c < 0) {
      m.sums.push_back(x.sums[i++]);
    } else if (c > 0) {
      m.sums.push_back(y.sums[j++]);
    } else {
      int e = x.sums[i].second + y.sums[j].second;
      if (e != 0) m.sums.emplace_back(x.sums[i].first, e);
      needs_expansion |= e > 0;
      ++i;
      ++j;
    }
  }
  Rational coef = a.coef * b.coef;
  if (needs_expansion) return normalize(std::move(m), std::move(coef));
  return single(std::move(m), std::move(coef));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Term> out;
  out.reserve(a.terms.size() * b.terms.size());
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      Poly p = term_product(x, y);
      for (auto& t : p.terms) out.push_back(std::move(t));
    }
  }
  return from_terms(std::move(out));
}

// (coef * mono)^k for k of either sign.
Poly term_power(const Term& t, int k) {
  Monomial m;
  m.sym = t.mono.sym;
  for (auto& e : m.sym) e *= k;
  if (t.mono.exp_arg) {
    m.exp_arg = std::make_shared<const Poly>(scale(*t.mono.exp_arg, Rational(k)));
  }
  for (const auto& [atom, e] : t.mono.sums) m.sums.emplace_back(atom, e * k);
  return normalize(std::move(m), curvlab::pow(t.coef, k));
}

// p = coef * factor * atom, with atom primitive: leading coefficient 1 and no
// monomial factor common to all of its terms.
struct Atomized {
  Rational coef;
  Monomial factor;
  PolyPtr atom;
};

Atomized atomize(const Poly& p) {
  Monomial common;
  // Coordinate powers shared by every term.
  std::size_t width = 0;
  for (const auto& t : p.terms) width = std::max(width, t.mono.sym.size());
  common.sym.assign(width, 0);
  for (std::size_t v = 0; v < width; ++v) {
    int lo = 0;
    bool first = true;
    for (const auto& t : p.terms) {
      int e = v < t.mono.sym.size() ? t.mono.sym[v] : 0;
      lo = first ? e : std::min(lo, e);
      first = false;
    }
    common.sym[v] = lo;
  }
  trim(common.sym);
  bool all_exp = std::all_of(p.terms.begin(), p.terms.end(),
                             [](const Term& t) { return static_cast<bool>(t.mono.exp_arg); });
  if (all_exp) common.exp_arg = p.terms.front().mono.exp_arg;
  for (const auto& [atom, e] : p.terms.front().mono.sums) {
    int hi = e;
    bool everywhere = true;
    for (const auto& t : p.terms) {
      auto it = std::find_if(t.mono.sums.begin(), t.mono.sums.end(),
                             [&](const auto& s) { return compare_poly(*s.first, *atom) == 0; });
      if (it == t.mono.sums.end()) {
        everywhere = false;
        break;
      }
      hi = std::max(hi, it->second);
    }
    if (everywhere) common.sums.emplace_back(atom, hi);
  }

  std::vector<Term> reduced;
  for (const auto& t : p.terms) {
    Term r = t;
    for (std::size_t v = 0; v < common.sym.size(); ++v) r.mono.sym[v] -= common.sym[v];
    trim(r.mono.sym);
    if (common.exp_arg) {
      Poly arg = cancel(add(*t.mono.exp_arg, negate(*common.exp_arg)));
      r.mono.exp_arg = arg.empty() ? nullptr : std::make_shared<const Poly>(std::move(arg));
    }
    for (const auto& [atom, e] : common.sums) {
      for (auto& s : r.mono.sums) {
        if (compare_poly(*s.first, *atom) == 0) s.second -= e;
      }
    }
    std::erase_if(r.mono.sums, [](const auto& s) { return s.second == 0; });
    reduced.push_back(std::move(r));
  }
  Poly atom = from_terms(std::move(reduced));
  Rational lead = atom.terms.front().coef;
  for (auto& t : atom.terms) t.coef /= lead;
  return {lead, std::move(common), std::make_shared<const Poly>(std::move(atom))};
}

Poly pow(const Poly& p, int k) {
  if (k == 0) return constant_poly(Rational(1));
  if (k > 0) {
    Poly result = constant_poly(Rational(1));
    Poly base = p;
    unsigned e = static_cast<unsigned>(k);
    while (e) {
      if (e & 1u) result = mul(result, base);
      e >>= 1u;
      if (e) base = mul(base, base);
    }
    return result;
  }
  Poly q = cancel(p);
  if (q.empty()) throw std::domain_error("division by an identically zero expression");
  if (q.terms.size() == 1) return term_power(q.terms.front(), k);
  Atomized a = atomize(q);
  Poly prefix = term_power(Term{a.factor, a.coef}, k);
  Monomial m;
  m.sums.emplace_back(a.atom, k);
  return mul(prefix, single(std::move(m), Rational(1)));
}

bool is_laurent(const Term& t) { return !t.mono.exp_arg && t.mono.sums.empty(); }

bool is_pure(const Term& t) {
  if (t.mono.exp_arg) return false;
  for (const auto& [atom, e] : t.mono.sums) {
    for (const auto& u : atom->terms) {
      if (!is_laurent(u)) return false;
    }
  }
  return true;
}

// Exact division of Laurent polynomials in the coordinates. Returns false
// when divisor does not divide dividend.
bool divide_exact(const Poly& dividend, const Poly& divisor, Poly& quotient) {
  std::size_t width = 0;
  for (const auto& t : dividend.terms) width = std::max(width, t.mono.sym.size());
  for (const auto& t : divisor.terms) width = std::max(width, t.mono.sym.size());
  auto range = [&](const Poly& p, std::vector<int>& lo, std::vector<int>& hi) {
    lo.assign(width, 0);
    hi.assign(width, 0);
    bool first = true;
    for (const auto& t : p.terms) {
      for (std::size_t v = 0; v < width; ++v) {
        int e = v < t.mono.sym.size() ? t.mono.sym[v] : 0;
        lo[v] = first ? e : std::min(lo[v], e);
        hi[v] = first ? e : std::max(hi[v], e);
      }
      first = false;
    }
  };
  std::vector<int> nlo, nhi, dlo, dhi;
  range(dividend, nlo, nhi);
  range(divisor, dlo, dhi);
  std::vector<int> qlo(width), qhi(width);
  for (std::size_t v = 0; v < width; ++v) {
    qlo[v] = nlo[v] - dlo[v];
    qhi[v] = nhi[v] - dhi[v];
    if (qlo[v] > qhi[v]) return false;
  }
  Poly rest = dividend;
  Poly q;
  const Term& lead = divisor.terms.front();
  while (!rest.empty()) {
    const Term& top = rest.terms.front();
    Monomial m;
    m.sym.assign(width, 0);
    for (std::size_t v = 0; v < width; ++v) {
      int a = v < top.mono.sym.size() ? top.mono.sym[v] : 0;
      int b = v < lead.mono.sym.size() ? lead.mono.sym[v] : 0;
      m.sym[v] = a - b;
      if (m.sym[v] < qlo[v] || m.sym[v] > qhi[v]) return false;
    }
    trim(m.sym);
    Poly step = single(std::move(m), top.coef / lead.coef);
    q = add(q, step);
    rest = add(rest, negate(mul(step, divisor)));
  }
  quotient = std::move(q);
  return true;
}

// Puts the exp-free terms whose sum atoms are Laurent polynomials over a
// common denominator and divides out every atom that divides the numerator.
Poly cancel(const Poly& p) {
  std::vector<Term> pure, other;
  for (const auto& t : p.terms) (is_pure(t) ? pure : other).push_back(t);

  std::vector<std::pair<PolyPtr, int>> denominators;  // atom, largest |exponent|
  for (const auto& t : pure) {
    for (const auto& [atom, e] : t.mono.sums) {
      auto it = std::find_if(denominators.begin(), denominators.end(),
                             [&](const auto& d) { return compare_poly(*d.first, *atom) == 0; });
      if (it == denominators.end()) {
        denominators.emplace_back(atom, -e);
      } else {
        it->second = std::max(it->second, -e);
      }
    }
  }
  if (denominators.empty()) return p;
  std::sort(denominators.begin(), denominators.end(),
            [](const auto& a, const auto& b) { return compare_poly(*a.first, *b.first) < 0; });

  Poly numerator;
  for (const auto& t : pure) {
    Term base = t;
    base.mono.sums.clear();
    Poly contribution = single(base.mono, base.coef);
    for (const auto& [atom, depth] : denominators) {
      int own = 0;
      for (const auto& [a, e] : t.mono.sums) {
        if (compare_poly(*a, *atom) == 0) own = -e;
      }
      if (depth > own) contribution = mul(contribution, pow(*atom, depth - own));
    }
    numerator = add(numerator, contribution);
  }

  Monomial denominator_mono;
  for (auto [atom, depth] : denominators) {
    Poly q;
    while (depth > 0 && !numerator.empty() && divide_exact(numerator, *atom, q)) {
      numerator = std::move(q);
      --depth;
    }
    if (depth > 0) denominator_mono.sums.emplace_back(atom, -depth);
  }

  std::vector<Term> out = std::move(other);
  for (auto& t : numerator.terms) {
    Term r = std::move(t);
    r.mono.sums = denominator_mono.sums;
    out.push_back(std::move(r));
  }
  return from_terms(std::move(out));
}

Poly to_poly(const Expr& e);

Poly inverse(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Product: {
      Poly out = constant_poly(Rational(1));
      for (const auto& c : e.children()) out = mul(out, inverse(c));
      return out;
    }
    case ExprKind::Power: return pow(to_poly(e.children()[0]), -e.exponent());
    case ExprKind::Quotient: return mul(inverse(e.children()[0]), to_poly(e.children()[1]));
    case ExprKind::Negate: return negate(inverse(e.children()[0]));
    default: return pow(to_poly(e), -1);
  }
}

Poly to_poly(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant: return constant_poly(e.value());
    case ExprKind::Symbol: {
      Monomial m;
      m.sym.assign(e.symbol_index() + 1, 0);
      m.sym.back() = 1;
      return single(std::move(m), Rational(1));
    }
    case ExprKind::Negate: return negate(to_poly(e.children()[0]));
    case ExprKind::Sum: {
      std::vector<Term> terms;
      for (const auto& c : e.children()) {
        for (auto& t : to_poly(c).terms) terms.push_back(std::move(t));
      }
      return from_terms(std::move(terms));
    }
    case ExprKind::Product: {
      Poly out = constant_poly(Rational(1));
      for (const auto& c : e.children()) {
        out = mul(out, to_poly(c));
        if (out.empty()) break;
      }
      return out;
    }
    case ExprKind::Quotient: {
      Poly den = inverse(e.children()[1]);
      return mul(to_poly(e.children()[0]), den);
    }
    case ExprKind::Power: return pow(to_poly(e.children()[0]), e.exponent());
    case ExprKind::Exp: {
      Poly arg = cancel(to_poly(e.children()[0]));
      if (arg.empty()) return constant_poly(Rational(1));
      Monomial m;
      m.exp_arg = std::make_shared<const Poly>(std::move(arg));
      return single(std::move(m), Rational(1));
    }
  }
  throw std::logic_error("unknown expression kind");
}

Expr to_expr(const Poly& p);

Expr term_to_expr(const Term& t) {
  std::vector<Expr> num, den;
  mpz_class n = abs(t.coef.get_num());
  if (n != 1) num.push_back(Expr::constant(Rational(n)));
  if (t.coef.get_den() != 1) den.push_back(Expr::constant(Rational(t.coef.get_den())));
  for (std::size_t v = 0; v < t.mono.sym.size(); ++v) {
    int e = t.mono.sym[v];
    if (e > 0) num.push_back(Expr::power(Expr::symbol(v), e));
    if (e < 0) den.push_back(Expr::power(Expr::symbol(v), -e));
  }
  if (t.mono.exp_arg) num.push_back(Expr::exp(to_expr(*t.mono.exp_arg)));
  for (const auto& [atom, e] : t.mono.sums) den.push_back(Expr::power(to_expr(*atom), -e));
  Expr body = Expr::product(std::move(num));
  if (!den.empty()) body = Expr::quotient(body, Expr::product(std::move(den)));
  return t.coef < 0 ? Expr::negate(body) : body;
}

Expr to_expr(const Poly& p) {
  if (p.terms.size() == 1 && is_laurent(p.terms.front()) && p.terms.front().mono.sym.empty()) {
    return Expr::constant(p.terms.front().coef);
  }
  std::vector<Expr> terms;
  terms.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    if (is_laurent(t) && t.mono.sym.empty()) {
      terms.push_back(Expr::constant(t.coef));
    } else {
      terms.push_back(term_to_expr(t));
    }
  }
  return Expr::sum(std::move(terms));
}

} // namespace

Expr simplify(const Expr& e) { return to_expr(cancel(to_poly(e))); }

bool is_identically_zero(const Expr& e) { return simplify(e).is_zero(); }

} // namespace curvlab
