#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spherebound/cert_io.hpp"
#include "spherebound/codes.hpp"
#include "spherebound/dist_bounds.hpp"
#include "spherebound/sdp_cert.hpp"
#include "support.hpp"

using namespace spherebound;
using testing_support::random_rational;

namespace {

const RationalPoly kG0 = parse_poly("(2t-1)*t^2*(2t+1)^2*(t+1)");
const Rational kHalf(1, 2);

Certificate separable_cert(const RationalPoly& s, int n, const Rational& f0, const Rational& cos_theta,
                           const Rational& B, IntervalSet T = {}, RationalPoly g = {}) {
  Certificate c;
  c.dim = n;
  c.degree = s.degree();
  c.f0 = f0;
  c.cos_theta = cos_theta;
  c.form = SeparableForm{s};
  c.B = B;
  c.T = std::move(T);
  c.g = std::move(g);
  return c;
}

// F = 1 as the matrix form with M_0 = [1].
Certificate constant_one_cert(const Rational& f0, const Rational& B) {
  Certificate c;
  c.dim = 8;
  c.degree = 0;
  c.f0 = f0;
  c.cos_theta = kHalf;
  c.form = MatrixForm{8, 0, {RationalMatrix{{Rational(1)}}}};
  c.B = B;
  return c;
}

bool in_domain(const Rational& x, const Rational& y, const Rational& z, const Rational& c) {
  return x <= c && y <= c && z <= c && x >= -1 && y >= -1 && z >= -1 &&
         1 + 2 * x * y * z - x * x - y * y - z * z >= 0;
}

}  // namespace

TEST_CASE("triple polynomials") {
  auto x = TriplePoly::variable(0), y = TriplePoly::variable(1), z = TriplePoly::variable(2);
  auto p = x * y + z;
  CHECK(p(Rational(2), Rational(3), Rational(5)) == 11);
  CHECK_FALSE(p.is_symmetric());
  CHECK(p.symmetrized().is_symmetric());
  CHECK(p.symmetrized()(Rational(1), Rational(2), Rational(3)) == Rational(2 + 3 + 6 + 1 + 2 + 3, 3));
  CHECK(p.permuted({2, 1, 0})(Rational(2), Rational(3), Rational(5)) == 5 * 3 + 2);
  auto s = TriplePoly::separable(kG0);
  CHECK(s.is_symmetric());
  CHECK(s.diagonal() == 2 * kG0 + RationalPoly::constant(kG0(Rational(1))));
  CHECK((x + y).pow(2) == x * x + 2 * x * y + y * y);
  CHECK(to_string(TriplePoly::constant(Rational(3, 4))) == "3/4");
}

TEST_CASE("S matrix examples") {
  auto s0 = build_s_matrix(8, 0, 0);
  REQUIRE(s0.entries.size() == 1);
  CHECK(s0.entries[0][0] == TriplePoly::constant(1));

  auto s1 = build_s_matrix(8, 1, 1);
  REQUIRE(s1.entries.size() == 1);
  auto x = TriplePoly::variable(0), y = TriplePoly::variable(1), z = TriplePoly::variable(2);
  auto by_hand = ((z - x * y) + (y - x * z) + (x - y * z)) * ratio(1, 3);
  CHECK(s1.entries[0][0] == by_hand);

  CHECK_THROWS_AS(build_s_matrix(2, 0, 1), UnsupportedError);
  CHECK_THROWS_AS(build_s_matrix(8, 3, 2), UnsupportedError);
}

TEST_CASE("S matrices vanish at (1,1,1) for k >= 1 and are symmetric") {
  for (int n : {3, 4, 8}) {
    for (int d = 1; d <= 4; ++d) {
      for (int k = 0; k <= d; ++k) {
        auto s = build_s_matrix(n, k, d);
        const auto size = static_cast<std::size_t>(d + 1 - k);
        REQUIRE(s.entries.size() == size);
        for (std::size_t i = 0; i < size; ++i) {
          for (std::size_t j = 0; j < size; ++j) {
            CHECK(s.entries[i][j] == s.entries[j][i]);
            CHECK(s.entries[i][j].is_symmetric());
            if (k >= 1) CHECK(s.entries[i][j](Rational(1), Rational(1), Rational(1)) == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("S matrices agree with the square-root oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int n : {3, 4, 8}) {
    for (int k = 0; k <= 3; ++k) {
      auto s = build_s_matrix(n, k, 3);
      for (int trial = 0; trial < 20; ++trial) {
        double x = u(rng), y = u(rng), z = u(rng);
        auto expected = oracle::s_matrix_numeric(n, k, 3, x, y, z);
        for (std::size_t i = 0; i < expected.size(); ++i) {
          for (std::size_t j = 0; j < expected.size(); ++j) {
            CHECK(s.entries[i][j](x, y, z) == doctest::Approx(expected[i][j]).epsilon(1e-9));
          }
        }
      }
    }
  }
}

TEST_CASE("assemble F") {
  CHECK(assemble_F(MatrixForm{8, 0, {RationalMatrix{{Rational(7, 3)}}}}) == TriplePoly::constant(Rational(7, 3)));

  auto trace = assemble_F(MatrixForm{8, 1, {identity_matrix(2), identity_matrix(1)}});
  CHECK(trace.is_symmetric());
  auto s0 = build_s_matrix(8, 0, 1), s1 = build_s_matrix(8, 1, 1);
  CHECK(trace == s0.entries[0][0] + s0.entries[1][1] + s1.entries[0][0]);

  auto sep = separable_cert(kG0, 8, Rational(9, 40), kHalf, 18);
  CHECK(sep.F() == TriplePoly::separable(kG0));
  CHECK(sep.F111() == 3 * kG0(Rational(1)));

  CHECK_THROWS_AS(assemble_F(MatrixForm{8, 1, {identity_matrix(2)}}), UnsupportedError);
  CHECK_THROWS_AS(assemble_F(MatrixForm{8, 1, {identity_matrix(1), identity_matrix(1)}}), UnsupportedError);
}

TEST_CASE("exact PSD test") {
  CHECK(check_psd(identity_matrix(3)).psd);
  CHECK(check_psd(corner_matrix(3)).psd);
  auto d = check_psd(RationalMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}});
  CHECK_FALSE(d.psd);
  REQUIRE(d.witness);
  CHECK(*d.witness == std::vector<Rational>{0, 1});
  CHECK_THROWS_AS(check_psd(RationalMatrix{{Rational(1), Rational(2)}, {Rational(0), Rational(1)}}),
                  UnsupportedError);
}

TEST_CASE("PSD witnesses are genuine") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t size = 1 + trial % 4;
    RationalMatrix m(size, std::vector<Rational>(size));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i; j < size; ++j) m[i][j] = m[j][i] = random_rational(rng, 5, 3);
    }
    auto r = check_psd(m);
    if (r.psd) {
      // Spot check: no basis or pair direction is negative.
      for (std::size_t i = 0; i < size; ++i) {
        CHECK(m[i][i] >= 0);
        for (std::size_t j = 0; j < size; ++j) {
          std::vector<Rational> v(size);
          v[i] += 1;
          v[j] -= 1;
          CHECK(quadratic_form(m, v) >= 0);
        }
      }
    } else {
      REQUIRE(r.witness);
      CHECK(quadratic_form(m, *r.witness) < 0);
    }
  }
}

TEST_CASE("BV membership") {
  Rational f0(3, 5);
  Certificate boundary = constant_one_cert(f0, 0);
  boundary.form = MatrixForm{8, 0, {RationalMatrix{{f0}}}};
  CHECK(check_bv(boundary).passed());
  CHECK(check_bv(boundary).rigorous());

  Certificate zero = boundary;
  zero.form = MatrixForm{8, 0, {RationalMatrix{{Rational(0)}}}};
  auto r = check_bv(zero);
  CHECK_FALSE(r.passed());
  auto f = r.first_failure();
  REQUIRE(f);
  CHECK(f->verdict.kind == VerdictKind::ExactFail);
  CHECK(f->verdict.witness == std::vector<Rational>{1});

  // g0 in n = 8 has positive Gegenbauer coefficients; 3 c_0 = 9/40.
  auto sep = separable_cert(kG0, 8, Rational(9, 40), kHalf, 18);
  CHECK(check_bv(sep).passed());
  sep.f0 = Rational(9, 40) + ratio(1, 1000000);
  CHECK_FALSE(check_bv(sep).passed());

  // A nonzero coefficient of the wrong sign.
  auto bad = separable_cert(kG0 - RationalPoly::identity(), 8, Rational(1, 100), kHalf, 18);
  CHECK_FALSE(check_bv(bad).passed());
}

TEST_CASE("condition on the diagonal") {
  auto lp = separable_cert(kG0, 8, Rational(9, 40), kHalf, 18);
  CHECK(check_condition2(lp).kind == VerdictKind::ExactPass);

  Rational a(1, 100);
  auto g1 = e8_poly(1, a);
  auto c1 = separable_cert(g1, 8, Rational(9, 40), kHalf, g1(Rational(1)), e8_window(1, a), g1);
  CHECK(check_condition2(c1).kind == VerdictKind::ExactPass);

  auto one = constant_one_cert(Rational(1, 2), 0);
  auto v = check_condition2(one);
  CHECK(v.kind == VerdictKind::ExactFail);
  REQUIRE(v.witness.size() == 1);
  CHECK(v.witness[0] >= -1);
  CHECK(v.witness[0] <= kHalf);
}

TEST_CASE("condition on D(theta)") {
  auto lp = separable_cert(kG0, 8, Rational(9, 40), kHalf, 18);
  CHECK(check_condition3(lp).kind == VerdictKind::ExactPass);

  Rational a(1, 100);
  auto g2 = e8_poly(2, a);
  auto T2 = IntervalSet::interval(-a, a);
  auto c2 = separable_cert(g2, 8, Rational(9, 40), kHalf, g2(Rational(1)), T2, g2);
  CHECK(check_condition3(c2).kind == VerdictKind::ExactPass);

  auto one = constant_one_cert(Rational(1, 2), 0);
  auto v = check_condition3(one);
  CHECK(v.kind == VerdictKind::ExactFail);
  REQUIRE(v.witness.size() == 3);
  CHECK(in_domain(v.witness[0], v.witness[1], v.witness[2], kHalf));
  CHECK(v.witness == std::vector<Rational>{0, 0, 0});
}

TEST_CASE("LP bound") {
  CHECK(lp_bound(expand(kG0, 8), kHalf).max_n == 240);
  CHECK_THROWS_AS(lp_bound(expand(RationalPoly::constant(1), 8), kHalf), PremiseError);
  CHECK_THROWS_AS(lp_bound(expand(parse_poly("1 + t"), 8), Rational(0)), PremiseError);
  try {
    lp_bound(expand(parse_poly("1 + t"), 8), Rational(0));
  } catch (const PremiseError& e) {
    CHECK(e.condition() == "f(x) <= 0 on [-1, cos theta]");
  }
}

TEST_CASE("three-point bound") {
  CHECK(three_point_bound(Rational(54), Rational(9, 40), 18).max_n == 240);
  Rational f0(5, 7);
  CHECK(three_point_bound(f0, f0, f0).max_n == 2);
  CHECK(three_point_bound(f0, f0, 0).max_n == 1);
  CHECK_THROWS_AS(three_point_bound(f0, 0, 0), PremiseError);
}

TEST_CASE("restricted three-point bound") {
  CHECK(restricted_bound(Rational(54), Rational(9, 40), 18, 0, Rigor::Rigorous).max_n == 240);
  Rational f0(5, 7);
  CHECK(restricted_bound(f0, f0, 0, 0, Rigor::Rigorous).max_n == 1);
  // A negative hat h counts as zero.
  CHECK(restricted_bound(Rational(54), Rational(9, 40), 18, -5, Rigor::Rigorous).max_n == 240);
  CHECK(restricted_bound(Rational(54), Rational(9, 40), 18, 0, Rigor::Numeric).rigor == Rigor::Numeric);
}

TEST_CASE("separable certificates reduce to the single-cap LP bound") {
  // F = g(x)+g(y)+g(z), B = g(1): the quadratic collapses to
  // N <= (f(1) + hat h_f) / f_0 with f = 3 g and hat h_f = 3 hat h_g.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = testing_support::random_poly(rng, 4);
    auto c0 = expand(g, 8).coeffs[0];
    if (c0 <= 0) continue;
    Rational h = abs(random_rational(rng, 30, 7));
    auto f = 3 * g;
    Rational f_one = f(Rational(1));
    if (f_one + 3 * h < 0) continue;
    Integer direct = floor((f_one + 3 * h) / (3 * c0));
    auto four = restricted_bound(3 * g(Rational(1)), 3 * c0, g(Rational(1)), h, Rigor::Rigorous);
    CHECK(four.max_n == (direct > 0 ? direct : Integer(0)));
  }
}

TEST_CASE("bounds are monotone") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Rational F111 = abs(random_rational(rng, 100, 3));
    Rational f0 = abs(random_rational(rng, 9, 7)) + ratio(1, 10);
    Rational B = abs(random_rational(rng, 9, 5));
    Rational h = abs(random_rational(rng, 9, 5));
    Rational step = abs(random_rational(rng, 5, 4)) + ratio(1, 100);
    auto base = restricted_bound(F111, f0, B, h, Rigor::Rigorous).max_n;
    CHECK(restricted_bound(F111, f0, B + step, h, Rigor::Rigorous).max_n >= base);
    CHECK(restricted_bound(F111, f0, B, h + step, Rigor::Rigorous).max_n >= base);
    CHECK(restricted_bound(F111, f0 + step, B, h, Rigor::Rigorous).max_n <= base);
    CHECK(three_point_bound(F111, f0, B + step).max_n >= three_point_bound(F111, f0, B).max_n);
    CHECK(three_point_bound(F111, f0 + step, B).max_n <= three_point_bound(F111, f0, B).max_n);
  }
}

TEST_CASE("quadratic solver matches brute force") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    Rational a = abs(random_rational(rng, 9, 9)) + ratio(1, 50);
    Rational b = random_rational(rng, 200, 3);
    Rational c = random_rational(rng, 400, 3);
    Integer expected = 0;
    for (long n = 0; n <= 20000; ++n) {
      if (a * n * n - b * n - c <= 0) expected = n;
    }
    CHECK(max_n_quadratic(a, b, c) == expected);
  }
}

TEST_CASE("shipped certificates verify") {
  auto lp = read_certificate_file(testing_support::data_path("certs/lp_g0_n8.cert"));
  auto r = verify(lp);
  CHECK(r.passed());
  CHECK(r.rigorous());
  CHECK(three_point_bound(lp.F111(), lp.f0, lp.B).max_n == 240);

  auto g1 = read_certificate_file(testing_support::data_path("certs/e8_g1_n8.cert"));
  CHECK(verify(g1).passed());

  auto simplex = read_certificate_file(testing_support::data_path("certs/simplex_n3_d1.cert"));
  auto rs = verify(simplex);
  CHECK(rs.passed());
  CHECK(three_point_bound(simplex.F111(), simplex.f0, simplex.B).max_n == 8);

  // A failing certificate is refused with the condition named.
  auto broken = lp;
  broken.B = 17;
  CHECK_THROWS_AS(require_verified(broken, verify(broken)), PremiseError);
}

TEST_CASE("PSD accumulation over codes") {
  auto cert = read_certificate_file(testing_support::data_path("certs/simplex_n3_d1.cert"));
  const auto F = cert.F();
  for (const char* name : {"simplex3", "cross3"}) {
    auto code = generate_code(name);
    CosineTable table(code);
    auto hist = triple_histogram(table);
    Rational sum = 0;
    for (const auto& [idx, count] : hist.counts) {
      sum += Rational(static_cast<long>(count)) * F(hist.values[idx[0]], hist.values[idx[1]], hist.values[idx[2]]);
    }
    Rational N(static_cast<long>(code.size()));
    CHECK(sum >= N * N * N * cert.f0);
  }
}

TEST_CASE("certificate soundness on generated codes") {
  auto lp = read_certificate_file(testing_support::data_path("certs/lp_g0_n8.cert"));
  auto bound = three_point_bound(lp.F111(), lp.f0, lp.B).max_n;
  for (const char* name : {"e8", "cross8", "simplex8"}) {
    auto code = generate_code(name);
    if (validate_code(code, lp.cos_theta).valid) CHECK(bound >= static_cast<long>(code.size()));
  }
}
