#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace spherebound {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or, when allow_decimal is set, a decimal such as
/// "-0.125" or "1e-3" (converted exactly). Throws ParseError.
Rational parse_rational(std::string_view text, bool allow_decimal = false);

/// Lowest-terms "p/q", or "p" for integers.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

double to_double(const Rational& value);

/// Exact binary value of a finite double.
Rational from_double(double value);

/// 1 / 10^digits.
Rational pow10_inverse(unsigned digits);

/// The rational with smallest denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

Rational abs(const Rational& value);

/// p/q in lowest terms; q must be nonzero.
Rational ratio(long p, long q);

}  // namespace spherebound
