#include "spherebound/gegenbauer.hpp"

#include <algorithm>

#include "spherebound/common.hpp"

namespace spherebound {

std::vector<RationalPoly> gegenbauer_basis(int n, int max_k) {
  if (n < 2) throw UnsupportedError("Gegenbauer polynomials need dimension n >= 2");
  if (max_k < 0) return {};
  std::vector<RationalPoly> basis;
  basis.reserve(static_cast<std::size_t>(max_k) + 1);
  basis.push_back(RationalPoly::constant(Rational(1)));
  if (max_k >= 1) basis.push_back(RationalPoly::identity());
  const RationalPoly x = RationalPoly::identity();
  for (int k = 2; k <= max_k; ++k) {
    RationalPoly next = x * basis[static_cast<std::size_t>(k - 1)] * Rational(2 * k + n - 4);
    next -= basis[static_cast<std::size_t>(k - 2)] * Rational(k - 1);
    next *= ratio(1, k + n - 3);
    basis.push_back(std::move(next));
  }
  return basis;
}

RationalPoly gegenbauer_poly(int n, int k) {
  if (k < 0) throw UnsupportedError("Gegenbauer degree must be nonnegative");
  return gegenbauer_basis(n, k).back();
}

Rational GegExpansion::value_at_one() const {
  Rational sum(0);
  for (const auto& c : coeffs) sum += c;
  return sum;
}

bool GegExpansion::all_nonnegative() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c >= 0; });
}

bool GegExpansion::all_positive() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c > 0; });
}

RationalPoly GegExpansion::reconstruct() const {
  auto basis = gegenbauer_basis(dim, degree());
  RationalPoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) out += basis[k] * coeffs[k];
  return out;
}

GegExpansion expand(const RationalPoly& p, int n) {
  GegExpansion out;
  out.dim = n;
  if (p.is_zero()) return out;
  const int d = p.degree();
  auto basis = gegenbauer_basis(n, d);
  out.coeffs.assign(static_cast<std::size_t>(d) + 1, Rational(0));
  RationalPoly residual = p;
  for (int k = d; k >= 0; --k) {
    const Rational c = residual.coeff(k) / basis[static_cast<std::size_t>(k)].leading();
    out.coeffs[static_cast<std::size_t>(k)] = c;
    if (c != 0) residual -= basis[static_cast<std::size_t>(k)] * c;
  }
  return out;
}

}  // namespace spherebound
