#include "curvlab/expr/expr.hpp"

#include <stdexcept>

namespace curvlab {

struct Expr::Node {
  ExprKind kind = ExprKind::Constant;
  Rational value;
  std::size_t symbol = 0;
  int exponent = 0;
  std::vector<Expr> children;
};

Expr::Expr() : Expr(constant(Rational(0))) {}

Expr Expr::constant(Rational value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Constant;
  value.canonicalize();
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::symbol(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Symbol;
  n->symbol = index;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Negate;
  n->children.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return std::move(terms.front());
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Sum;
  n->children = std::move(terms);
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return integer(1);
  if (factors.size() == 1) return std::move(factors.front());
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Product;
  n->children = std::move(factors);
  return Expr(std::move(n));
}

Expr Expr::quotient(Expr numerator, Expr denominator) {
  if (denominator.is_zero()) throw std::domain_error("quotient with a zero constant denominator");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Quotient;
  n->children = {std::move(numerator), std::move(denominator)};
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent > kMaxExponent || exponent < -kMaxExponent) {
    throw std::out_of_range("integer exponent out of range");
  }
  if (exponent == 0) return integer(1);
  if (exponent == 1) return base;
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Power;
  n->exponent = exponent;
  n->children.push_back(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::exp(Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Exp;
  n->children.push_back(std::move(argument));
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }

const Rational& Expr::value() const {
  if (node_->kind != ExprKind::Constant) throw std::logic_error("value() on non-constant");
  return node_->value;
}

std::size_t Expr::symbol_index() const {
  if (node_->kind != ExprKind::Symbol) throw std::logic_error("symbol_index() on non-symbol");
  return node_->symbol;
}

int Expr::exponent() const {
  if (node_->kind != ExprKind::Power) throw std::logic_error("exponent() on non-power");
  return node_->exponent;
}

std::span<const Expr> Expr::children() const { return node_->children; }

bool Expr::is_zero() const { return node_->kind == ExprKind::Constant && node_->value == 0; }
bool Expr::is_one() const { return node_->kind == ExprKind::Constant && node_->value == 1; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case ExprKind::Constant: return x.value == y.value;
    case ExprKind::Symbol: return x.symbol == y.symbol;
    case ExprKind::Power:
      if (x.exponent != y.exponent) return false;
      break;
    default: break;
  }
  if (x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr::sum({a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr::sum({a, Expr::negate(b)});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return Expr::product({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && !b.is_zero()) {
    return Expr::constant(a.value() / b.value());
  }
  if (a.is_zero() && !b.is_zero()) return Expr();
  if (b.is_one()) return a;
  return Expr::quotient(a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.kind() == ExprKind::Negate) return a.children()[0];
  return Expr::negate(a);
}

Expr operator+(const Expr& a, long b) { return a + Expr::integer(b); }
Expr operator*(long a, const Expr& b) { return Expr::integer(a) * b; }

std::size_t Expr::size() const {
  std::size_t total = 1;
  for (const auto& c : node_->children) total += c.size();
  return total;
}

namespace {

void collect_symbols(const Expr& e, std::set<std::size_t>& out) {
  if (e.kind() == ExprKind::Symbol) {
    out.insert(e.symbol_index());
    return;
  }
  for (const auto& c : e.children()) collect_symbols(c, out);
}

// Binding strength used by the printer; a child is parenthesized when its
// strength is below what the parent slot requires.
int strength(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      if (e.value() < 0) return 2;
      return is_integer(e.value()) ? 5 : 3;
    case ExprKind::Symbol:
    case ExprKind::Exp: return 5;
    case ExprKind::Power: return 4;
    case ExprKind::Product:
    case ExprKind::Quotient: return 3;
    case ExprKind::Negate: return 2;
    case ExprKind::Sum: return 1;
  }
  return 0;
}

std::string render(const Expr& e, std::span<const std::string> names, int required);

std::string render_node(const Expr& e, std::span<const std::string> names) {
  switch (e.kind()) {
    case ExprKind::Constant: return to_string(e.value());
    case ExprKind::Symbol: {
      auto i = e.symbol_index();
      return i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    }
    case ExprKind::Negate: return "-" + render(e.children()[0], names, 3);
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.children()) {
        if (first) {
          out += render(t, names, 1);
        } else if (t.kind() == ExprKind::Negate) {
          out += " - " + render(t.children()[0], names, 2);
        } else if (t.is_constant() && t.value() < 0) {
          out += " - " + to_string(Rational(-t.value()));
        } else {
          out += " + " + render(t, names, 2);
        }
        first = false;
      }
      return out;
    }
    case ExprKind::Product: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += "*";
        out += render(e.children()[i], names, 3);
      }
      return out;
    }
    case ExprKind::Quotient:
      return render(e.children()[0], names, 3) + "/" + render(e.children()[1], names, 4);
    case ExprKind::Power: {
      int k = e.exponent();
      std::string exponent = k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k);
      return render(e.children()[0], names, 5) + "^" + exponent;
    }
    case ExprKind::Exp: return "exp(" + render(e.children()[0], names, 0) + ")";
  }
  return {};
}

std::string render(const Expr& e, std::span<const std::string> names, int required) {
  auto body = render_node(e, names);
  return strength(e) < required ? "(" + body + ")" : body;
}

} // namespace

std::set<std::size_t> free_symbols(const Expr& e) {
  std::set<std::size_t> out;
  collect_symbols(e, out);
  return out;
}

std::string to_string(const Expr& e, std::span<const std::string> names) {
  return render(e, names, 0);
}

} // namespace curvlab
