#include "curvlab/expr/numeric.hpp"

#include <fmt/format.h>

#include <cmath>

namespace curvlab {

double NumericValue::to_double() const {
  if (is_exact()) return exact().get_d();
  return std::get<double>(value_);
}

bool NumericValue::is_zero() const {
  return is_exact() ? exact() == 0 : std::get<double>(value_) == 0.0;
}

int NumericValue::sign() const {
  if (is_exact()) return sgn(exact());
  double x = std::get<double>(value_);
  return (x > 0) - (x < 0);
}

NumericValue NumericValue::abs() const {
  if (is_exact()) return exact() < 0 ? NumericValue(Rational(-exact())) : *this;
  return NumericValue(std::fabs(std::get<double>(value_)));
}

std::string NumericValue::to_string() const {
  if (is_exact()) return curvlab::to_string(exact());
  return fmt::format("{:.17g}", std::get<double>(value_));
}

NumericValue operator+(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) return NumericValue(Rational(a.exact() + b.exact()));
  return NumericValue(a.to_double() + b.to_double());
}

NumericValue operator-(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) return NumericValue(Rational(a.exact() - b.exact()));
  return NumericValue(a.to_double() - b.to_double());
}

NumericValue operator*(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) return NumericValue(Rational(a.exact() * b.exact()));
  return NumericValue(a.to_double() * b.to_double());
}

NumericValue operator/(const NumericValue& a, const NumericValue& b) {
  if (b.is_zero()) throw EvaluationError("division by zero");
  if (a.is_exact() && b.is_exact()) return NumericValue(Rational(a.exact() / b.exact()));
  return NumericValue(a.to_double() / b.to_double());
}

NumericValue operator-(const NumericValue& a) {
  if (a.is_exact()) return NumericValue(Rational(-a.exact()));
  return NumericValue(-a.to_double());
}

bool operator==(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.to_double() == b.to_double();
}

bool operator<(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
  return a.to_double() < b.to_double();
}

NumericValue pow(const NumericValue& base, int k) {
  if (base.is_zero() && k < 0) throw EvaluationError("zero raised to a negative power");
  if (base.is_exact()) return NumericValue(curvlab::pow(base.exact(), k));
  return NumericValue(std::pow(base.to_double(), k));
}

NumericValue exp(const NumericValue& x) {
  if (x.is_exact() && x.exact() == 0) return NumericValue(Rational(1));
  return NumericValue(std::exp(x.to_double()));
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].to_string();
  }
  return out + ")";
}

} // namespace curvlab
