#pragma once

#include <random>
#include <string>
#include <vector>

#include "spherebound/poly.hpp"
#include "spherebound/rational.hpp"

namespace testing_support {

using spherebound::Rational;
using spherebound::RationalPoly;

inline Rational random_rational(std::mt19937_64& rng, long max_num = 20, long max_den = 12) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

/// Uniform rational in [lo, hi] with the given denominator.
inline Rational random_in(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long den = 100000) {
  std::uniform_int_distribution<long> k(0, den);
  return lo + (hi - lo) * spherebound::ratio(k(rng), den);
}

inline RationalPoly random_poly(std::mt19937_64& rng, int degree, long max_num = 9, long max_den = 6) {
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_rational(rng, max_num, max_den));
  if (c.back() == 0) c.back() = 1;
  return RationalPoly(c);
}

inline std::string data_path(const std::string& relative) { return std::string(SPHEREBOUND_DATA_DIR) + "/" + relative; }

}  // namespace testing_support
