#pragma once

#include "curvlab/expr/rational.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace curvlab {

/// Raised when an evaluation leaves the domain (division by zero, 0^-k).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar that is either an exact rational or a double.
///
/// Arithmetic between exact values stays exact; anything touching a double,
/// or an operation that leaves the rationals (exp of a nonzero rational),
/// produces a double and the value is no longer exact.
class NumericValue {
 public:
  NumericValue() : value_(Rational(0)) {}
  NumericValue(Rational q) : value_(std::move(q)) {}  // NOLINT(implicit)
  explicit NumericValue(double x) : value_(x) {}

  static NumericValue integer(long v) { return NumericValue(Rational(v)); }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  /// Precondition: is_exact().
  const Rational& exact() const { return std::get<Rational>(value_); }
  double to_double() const;

  bool is_zero() const;
  int sign() const;
  NumericValue abs() const;
  NumericValue demoted() const { return NumericValue(to_double()); }

  /// "p/q" for exact values, 17 significant digits for floats.
  std::string to_string() const;

  friend NumericValue operator+(const NumericValue& a, const NumericValue& b);
  friend NumericValue operator-(const NumericValue& a, const NumericValue& b);
  friend NumericValue operator*(const NumericValue& a, const NumericValue& b);
  /// Throws EvaluationError on division by zero.
  friend NumericValue operator/(const NumericValue& a, const NumericValue& b);
  friend NumericValue operator-(const NumericValue& a);

  NumericValue& operator+=(const NumericValue& b) { return *this = *this + b; }
  NumericValue& operator-=(const NumericValue& b) { return *this = *this - b; }
  NumericValue& operator*=(const NumericValue& b) { return *this = *this * b; }

  /// Compares by value (exact when both are exact).
  friend bool operator==(const NumericValue& a, const NumericValue& b);
  friend bool operator<(const NumericValue& a, const NumericValue& b);

 private:
  std::variant<Rational, double> value_;
};

NumericValue pow(const NumericValue& base, int k);
NumericValue exp(const NumericValue& x);
inline NumericValue max_abs(const NumericValue& a, const NumericValue& b) {
  return b.abs() < a.abs() ? a.abs() : b.abs();
}

/// One coordinate value per chart coordinate.
using Point = std::vector<NumericValue>;

std::string to_string(const Point& p);

} // namespace curvlab
