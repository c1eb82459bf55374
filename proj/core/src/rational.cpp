#include "spherebound/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "spherebound/common.hpp"

namespace spherebound {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                     : what),
      line_(line),
      column_(column) {}

PremiseError::PremiseError(std::string condition, const std::string& detail)
    : Error(condition + ": " + detail), condition_(std::move(condition)) {}

std::string_view to_string(Rigor rigor) {
  switch (rigor) {
    case Rigor::Rigorous: return "rigorous";
    case Rigor::Numeric: return "numeric";
    case Rigor::Heuristic: return "heuristic";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw ParseError("malformed rational '" + std::string(original) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  auto dot = text.find('.');
  std::string_view int_part = dot == std::string_view::npos ? text : text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw ParseError("malformed rational '" + std::string(original) + "'");
  }
  digits.append(int_part).append(frac_part);
  exponent -= static_cast<long>(frac_part.size());
  Integer mantissa(digits.empty() ? std::string("0") : digits, 10);
  Rational value(mantissa);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= scale;
  } else {
    value *= scale;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  const std::string_view original = text;
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational");
  if (text.find_first_of(".eE") != std::string_view::npos) {
    if (!allow_decimal) {
      throw ParseError("decimal value '" + std::string(original) +
                       "' is not exact; write it as p/q or pass --approx");
    }
    return parse_decimal(text, original);
  }
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = trim(body.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(body.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(original) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(original) + "'");
  Rational value(n, d);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const Integer& value) { return value.get_str(10); }

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw Error("cannot convert non-finite double to a rational");
  Rational out(value);
  out.canonicalize();
  return out;
}

Rational pow10_inverse(unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  return Rational(Integer(1), scale);
}

Rational ratio(long p, long q) {
  if (q == 0) throw Error("zero denominator");
  Rational out{Integer(p), Integer(q)};
  out.canonicalize();
  return out;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_between(hi, lo);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return Rational(-simplest_between(-hi, -lo));
  Integer whole = floor(lo);
  if (whole == lo) return lo;
  if (whole + 1 <= hi) return Rational(whole + 1);
  // lo and hi share the integer part; recurse on the reciprocals of the fractional parts.
  Rational inner = simplest_between(1 / Rational(hi - whole), 1 / Rational(lo - whole));
  Rational out = whole + 1 / inner;
  out.canonicalize();
  return out;
}

}  // namespace spherebound
