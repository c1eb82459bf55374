#include <cctype>

#include "spherebound/common.hpp"
#include "spherebound/poly.hpp"

namespace spherebound {
namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := power (('*'|'/') power | power)*      implicit product allowed
// power  := atom ('^' integer)?
// atom   := number | 't' | 'x' | '(' expr ')'
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  RationalPoly parse() {
    RationalPoly out = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial expression: " + what, 1, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RationalPoly expr() {
    RationalPoly acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    while (peek() == '+' || peek() == '-') {
      const bool minus = text_[pos_] == '-';
      ++pos_;
      RationalPoly rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  bool starts_atom(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'x' || c == '(';
  }

  RationalPoly term() {
    RationalPoly acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= power();
      } else if (c == '/') {
        ++pos_;
        RationalPoly d = power();
        if (d.degree() != 0) fail("division only by nonzero constants");
        acc *= Rational(1 / d.leading());
      } else if (starts_atom(c)) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  RationalPoly power() {
    RationalPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  RationalPoly atom() {
    char c = peek();
    if (c == 't' || c == 'x') {
      ++pos_;
      return RationalPoly::identity();
    }
    if (c == '(') {
      ++pos_;
      RationalPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RationalPoly::constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalPoly parse_poly_expr(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace spherebound
