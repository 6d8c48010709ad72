#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curvlab {

/// Arbitrary-precision rational, always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "p", "p/q", or a decimal literal such as "0.25" / "-1.5" exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

/// q^k for any integer k; throws std::domain_error for 0^k with k < 0.
Rational pow(const Rational& q, int k);

} // namespace curvlab
