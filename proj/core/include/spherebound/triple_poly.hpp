#pragma once

#include <array>
#include <map>
#include <string>

#include "spherebound/poly.hpp"
#include "spherebound/rational.hpp"

namespace spherebound {

/// Exact polynomial in three variables x, y, z.
class TriplePoly {
 public:
  using Exponent = std::array<int, 3>;

  TriplePoly() = default;
  static TriplePoly constant(const Rational& c);
  /// The coordinate polynomial for variable 0 (x), 1 (y) or 2 (z).
  static TriplePoly variable(int which);
  static TriplePoly monomial(const Rational& c, const Exponent& e);
  /// p(x) + p(y) + p(z).
  static TriplePoly separable(const RationalPoly& p);
  /// p applied to one variable.
  static TriplePoly in_variable(const RationalPoly& p, int which);

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  Rational operator()(const Rational& x, const Rational& y, const Rational& z) const;
  double operator()(double x, double y, double z) const;

  /// F(x, x, 1) as a univariate polynomial.
  RationalPoly diagonal() const;
  /// Variables reordered: result(v0, v1, v2) = F(v[perm[0]], v[perm[1]], v[perm[2]]).
  TriplePoly permuted(const std::array<int, 3>& perm) const;
  /// Average over the six permutations of the variables.
  TriplePoly symmetrized() const;
  bool is_symmetric() const;

  /// Upper bound of |dF/dv| over the cube [-1, 1]^3 for each variable.
  std::array<double, 3> gradient_bound() const;

  TriplePoly& operator+=(const TriplePoly& other);
  TriplePoly& operator-=(const TriplePoly& other);
  TriplePoly& operator*=(const Rational& scalar);
  friend TriplePoly operator+(TriplePoly a, const TriplePoly& b) { return a += b; }
  friend TriplePoly operator-(TriplePoly a, const TriplePoly& b) { return a -= b; }
  friend TriplePoly operator*(TriplePoly a, const Rational& s) { return a *= s; }
  friend TriplePoly operator*(const Rational& s, TriplePoly a) { return a *= s; }
  friend TriplePoly operator*(const TriplePoly& a, const TriplePoly& b);
  TriplePoly pow(unsigned exponent) const;
  bool operator==(const TriplePoly&) const = default;

 private:
  void add_term(const Exponent& e, const Rational& c);
  std::map<Exponent, Rational> terms_;
};

/// Human readable sum of monomials, e.g. "1 + 4/3*x + 4/3*y + 4/3*z".
std::string to_string(const TriplePoly& p);

}  // namespace spherebound
