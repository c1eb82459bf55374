#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "spherebound/cert_io.hpp"
#include "support.hpp"

using namespace spherebound;
using testing_support::data_path;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSimplex = R"({
  "dim": 3,
  "degree": 1,
  "f0": "1/2",
  "theta_cos": "-1/3",
  "matrices": [
    [["1", "1"], ["1", "2"]],
    [["2"]]
  ],
  "B": "13/9",
  "T": "{}",
  "g": "[]"
})";

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("shipped certificates round-trip byte for byte") {
  for (const char* name : {"certs/lp_g0_n8.cert", "certs/e8_g1_n8.cert", "certs/simplex_n3_d1.cert"}) {
    auto text = slurp(data_path(name));
    auto cert = parse_certificate(text);
    CHECK(emit_certificate(cert) == text);
    CHECK(emit_certificate(parse_certificate(emit_certificate(cert))) == text);
  }
}

TEST_CASE("parsed fields") {
  auto c = parse_certificate(kSimplex);
  CHECK(c.dim == 3);
  CHECK(c.degree == 1);
  CHECK(c.f0 == Rational(1, 2));
  CHECK(c.cos_theta == Rational(-1, 3));
  CHECK_FALSE(c.separable());
  CHECK(c.B == Rational(13, 9));
  CHECK(c.T.empty());
  CHECK(c.g.is_zero());
  const auto& m = std::get<MatrixForm>(c.form);
  REQUIRE(m.blocks.size() == 2);
  CHECK(m.blocks[0][1][1] == 2);

  auto lp = read_certificate_file(data_path("certs/lp_g0_n8.cert"));
  CHECK(lp.separable());
  CHECK(std::get<SeparableForm>(lp.form).s == parse_poly("(2t-1)*t^2*(2t+1)^2*(t+1)"));
}

TEST_CASE("zero denominators are parse errors") {
  auto text = replaced(kSimplex, "\"13/9\"", "\"1/0\"");
  CHECK_THROWS_AS(parse_certificate(text), ParseError);
  try {
    parse_certificate(text);
  } catch (const ParseError& e) {
    CHECK(e.line() == 10);
    CHECK(std::string(e.what()).find("'B'") != std::string::npos);
  }
}

TEST_CASE("missing fields are named") {
  auto text = replaced(kSimplex, "\"f0\": \"1/2\",", "");
  try {
    parse_certificate(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'f0'") != std::string::npos);
  }
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(parse_certificate(replaced(kSimplex, "[[\"1\", \"1\"], [\"1\", \"2\"]]", "[[\"1\", \"0\"], [\"1\", \"2\"]]")),
                  ParseError);
  CHECK_THROWS_AS(parse_certificate(replaced(kSimplex, "[[\"2\"]]", "[[\"2\", \"1\"]]")), ParseError);
  CHECK_THROWS_AS(parse_certificate(replaced(kSimplex, "\"degree\": 1", "\"degree\": 2")), ParseError);
  CHECK_THROWS_AS(parse_certificate(replaced(kSimplex, "\"matrices\"", "\"separable_g\": \"[1]\", \"matrices\"")),
                  ParseError);
  CHECK_THROWS_AS(parse_certificate("{\"dim\": 3,"), ParseError);
  CHECK_THROWS_AS(parse_certificate("[1, 2]"), ParseError);
}

TEST_CASE("decimals need explicit permission") {
  auto text = replaced(kSimplex, "\"1/2\"", "\"0.5\"");
  CHECK_THROWS_AS(parse_certificate(text), ParseError);
  bool used = false;
  auto c = parse_certificate(text, true, &used);
  CHECK(used);
  CHECK(c.f0 == Rational(1, 2));
  used = true;
  parse_certificate(kSimplex, true, &used);
  CHECK_FALSE(used);
}

TEST_CASE("missing files are reported") { CHECK_THROWS_AS(read_certificate_file("/nonexistent.cert"), Error); }
