#pragma once

#include <vector>

#include "spherebound/poly.hpp"
#include "spherebound/rational.hpp"

namespace spherebound {

/// G_k^(n), the Gegenbauer polynomial for the sphere S^(n-1), normalized so
/// that G_k^(n)(1) = 1. Built from the three-term recurrence
///   G_k = ((2k+n-4) x G_{k-1} - (k-1) G_{k-2}) / (k+n-3).
/// Requires n >= 2 and k >= 0.
RationalPoly gegenbauer_poly(int n, int k);

/// G_0^(n) ... G_max_k^(n), computed in one pass.
std::vector<RationalPoly> gegenbauer_basis(int n, int max_k);

/// Coefficients c_0..c_d of a polynomial in the basis G_k^(n).
///
/// Other normalizations of the basis rescale individual c_k but leave the
/// ratios used by the bounds (f(1)/c_0 and the signs) unchanged.
struct GegExpansion {
  int dim = 0;
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// f(1) = sum of the coefficients, since every G_k(1) = 1.
  Rational value_at_one() const;
  bool all_nonnegative() const;
  bool all_positive() const;
  RationalPoly reconstruct() const;
};

/// Exact change of basis by back substitution (G_k has degree exactly k).
GegExpansion expand(const RationalPoly& p, int n);

}  // namespace spherebound
