#pragma once

#include <optional>
#include <vector>

#include "spherebound/rational.hpp"

namespace spherebound {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix identity_matrix(std::size_t size);
/// The matrix whose only nonzero entry is a 1 in the top left corner.
RationalMatrix corner_matrix(std::size_t size);
bool is_square(const RationalMatrix& m);
bool is_symmetric(const RationalMatrix& m);

/// Coefficients c_0..c_r of det(lambda I - M), low to high (c_r = 1).
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

/// v^T M v, exactly.
Rational quadratic_form(const RationalMatrix& m, const std::vector<Rational>& v);

struct PsdResult {
  bool psd = false;
  /// Present when psd is false: an exact vector with v^T M v < 0.
  std::optional<std::vector<Rational>> witness;
  /// The elementary symmetric functions e_1..e_r of the eigenvalues.
  std::vector<Rational> elementary;
};

/// Exact test. M is PSD iff every e_i >= 0 where
///   det(lambda I - M) = lambda^r - e_1 lambda^(r-1) + e_2 lambda^(r-2) - ...
/// The witness comes from symmetric Gaussian elimination.
/// Throws UnsupportedError for non-square or non-symmetric input.
PsdResult check_psd(const RationalMatrix& m);

}  // namespace spherebound
