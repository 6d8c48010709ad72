#pragma once

#include "curvlab/expr/rational.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace curvlab {

enum class ExprKind { Constant, Symbol, Negate, Sum, Product, Quotient, Power, Exp };

/// Largest |exponent| accepted for integer powers.
inline constexpr int kMaxExponent = 4096;

/// Immutable scalar expression over chart coordinates.
///
/// Nodes are shared and never mutated after construction, so copies are cheap
/// and values can be read from several threads. Coordinates are referenced
/// by index; names live with the chart.
class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(Rational value);
  static Expr integer(long value) { return constant(Rational(value)); }
  static Expr symbol(std::size_t index);
  static Expr negate(Expr operand);
  /// Zero children give 0, one child is returned unchanged.
  static Expr sum(std::vector<Expr> terms);
  /// Zero children give 1, one child is returned unchanged.
  static Expr product(std::vector<Expr> factors);
  /// Throws std::domain_error when the denominator is the literal constant 0.
  static Expr quotient(Expr numerator, Expr denominator);
  /// Exponent 0 gives 1, exponent 1 gives the base.
  /// Throws std::out_of_range when |exponent| > kMaxExponent.
  static Expr power(Expr base, int exponent);
  static Expr exp(Expr argument);

  ExprKind kind() const;
  /// Constant nodes only.
  const Rational& value() const;
  /// Symbol nodes only.
  std::size_t symbol_index() const;
  /// Power nodes only.
  int exponent() const;
  std::span<const Expr> children() const;

  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Deep structural comparison.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  /// Arithmetic builds new nodes with constant folding and 0/1 identities only;
  /// call simplify() for a normal form.
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  /// Number of nodes in the tree.
  std::size_t size() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, long b);
Expr operator*(long a, const Expr& b);

/// Indices of the coordinate symbols that appear in e.
std::set<std::size_t> free_symbols(const Expr& e);

/// Renders e in the parser's grammar, so the text parses back to an
/// equivalent expression. Symbols beyond `names` print as x<index+1>.
std::string to_string(const Expr& e, std::span<const std::string> names = {});

} // namespace curvlab
