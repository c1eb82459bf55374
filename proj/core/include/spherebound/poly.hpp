#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spherebound/rational.hpp"

namespace spherebound {

/// Exact univariate polynomial over the rationals. Coefficients are stored
/// low-to-high with no trailing zeros; the zero polynomial has none.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, int power);
  /// The identity polynomial x.
  static RationalPoly identity();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int power) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  RationalPoly derivative() const;
  /// p(q(x)).
  RationalPoly compose(const RationalPoly& q) const;
  /// Same roots, leading coefficient 1.
  RationalPoly monic() const;

  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);
  RationalPoly& operator*=(const RationalPoly& other);
  RationalPoly& operator*=(const Rational& scalar);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& s) { return a *= s; }
  friend RationalPoly operator*(const Rational& s, RationalPoly a) { return a *= s; }
  friend RationalPoly operator-(RationalPoly a) { return a *= Rational(-1); }

  RationalPoly pow(unsigned exponent) const;

  bool operator==(const RationalPoly& other) const { return coeffs_ == other.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& dividend, const RationalPoly& divisor);

/// Monic greatest common divisor (zero if both inputs are zero).
RationalPoly gcd(RationalPoly a, RationalPoly b);

/// p / gcd(p, p'): same distinct roots, all simple.
RationalPoly squarefree_part(const RationalPoly& p);

/// "[c0, c1, ..., cd]" in lowest terms, low-to-high degree; "[]" for zero.
std::string to_string(const RationalPoly& p);

/// Inverse of to_string.
RationalPoly parse_poly_list(std::string_view text);

/// Arithmetic expression in one variable (t or x), e.g.
/// "(2t-1)*t^2*(2t+1)^2*(t+1)". Supports + - * /, integer powers, rational
/// literals and implicit multiplication.
RationalPoly parse_poly_expr(std::string_view text);

/// List form when the text starts with '[', expression form otherwise.
RationalPoly parse_poly(std::string_view text);

}  // namespace spherebound
