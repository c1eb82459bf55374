#include "spherebound/triple_poly.hpp"

#include <cmath>
#include <sstream>

namespace spherebound {

void TriplePoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TriplePoly TriplePoly::constant(const Rational& c) { return monomial(c, {0, 0, 0}); }

TriplePoly TriplePoly::variable(int which) {
  Exponent e{0, 0, 0};
  e.at(static_cast<std::size_t>(which)) = 1;
  return monomial(1, e);
}

TriplePoly TriplePoly::monomial(const Rational& c, const Exponent& e) {
  TriplePoly p;
  p.add_term(e, c);
  return p;
}

TriplePoly TriplePoly::in_variable(const RationalPoly& q, int which) {
  TriplePoly p;
  for (int i = 0; i <= q.degree(); ++i) {
    Exponent e{0, 0, 0};
    e.at(static_cast<std::size_t>(which)) = i;
    p.add_term(e, q.coeff(i));
  }
  return p;
}

TriplePoly TriplePoly::separable(const RationalPoly& q) {
  return in_variable(q, 0) + in_variable(q, 1) + in_variable(q, 2);
}

int TriplePoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

namespace {

template <typename T>
T power(const T& base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rational TriplePoly::operator()(const Rational& x, const Rational& y, const Rational& z) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) sum += c * power(x, e[0]) * power(y, e[1]) * power(z, e[2]);
  return sum;
}

double TriplePoly::operator()(double x, double y, double z) const {
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    sum += c.get_d() * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
  }
  return sum;
}

RationalPoly TriplePoly::diagonal() const {
  RationalPoly out;
  for (const auto& [e, c] : terms_) out += RationalPoly::monomial(c, e[0] + e[1]);
  return out;
}

TriplePoly TriplePoly::permuted(const std::array<int, 3>& perm) const {
  TriplePoly out;
  for (const auto& [e, c] : terms_) {
    Exponent f{0, 0, 0};
    for (std::size_t i = 0; i < 3; ++i) f[static_cast<std::size_t>(perm[i])] += e[i];
    out.add_term(f, c);
  }
  return out;
}

namespace {

constexpr std::array<std::array<int, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace

TriplePoly TriplePoly::symmetrized() const {
  TriplePoly out;
  for (const auto& perm : kPermutations) out += permuted(perm);
  out *= Rational(1, 6);
  return out;
}

bool TriplePoly::is_symmetric() const {
  for (const auto& perm : kPermutations) {
    if (permuted(perm) != *this) return false;
  }
  return true;
}

std::array<double, 3> TriplePoly::gradient_bound() const {
  std::array<double, 3> bound{0, 0, 0};
  for (const auto& [e, c] : terms_) {
    double a = std::abs(c.get_d());
    for (std::size_t i = 0; i < 3; ++i) bound[i] += a * e[i];
  }
  for (double& b : bound) b = b * (1 + 1e-12) + 1e-300;
  return bound;
}

TriplePoly& TriplePoly::operator+=(const TriplePoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

TriplePoly& TriplePoly::operator-=(const TriplePoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

TriplePoly& TriplePoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

TriplePoly operator*(const TriplePoly& a, const TriplePoly& b) {
  TriplePoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

TriplePoly TriplePoly::pow(unsigned exponent) const {
  TriplePoly r = constant(1);
  for (unsigned i = 0; i < exponent; ++i) r = r * *this;
  return r;
}

std::string to_string(const TriplePoly& p) {
  if (p.is_zero()) return "0";
  static constexpr char kNames[3] = {'x', 'y', 'z'};
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out << " + ";
    first = false;
    out << to_string(c);
    for (std::size_t i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      out << '*' << kNames[i];
      if (e[i] > 1) out << '^' << e[i];
    }
  }
  return out.str();
}

}  // namespace spherebound
