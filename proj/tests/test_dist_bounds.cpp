#include <random>

#include "doctest.h"
#include "spherebound/codes.hpp"
#include "spherebound/dist_bounds.hpp"
#include "support.hpp"

using namespace spherebound;
using testing_support::random_in;

namespace {

const RationalPoly kG0 = parse_poly("(2t-1)*t^2*(2t+1)^2*(t+1)");
const std::array<Rational, 4> kDefaultA{ratio(1, 100), ratio(1, 100), ratio(1, 100), ratio(1, 100)};

Certificate g0_on(const IntervalSet& T) {
  Certificate c = e8_certificate(0, 0);
  c.T = T;
  c.g = kG0;
  return c;
}

bool integral(const Rational& r) { return r.get_den() == 1; }

}  // namespace

TEST_CASE("example polynomials") {
  CHECK(e8_poly(0) == kG0);
  CHECK(kG0.degree() == 6);
  CHECK(kG0(Rational(1)) == 18);
  for (int i = 1; i <= 4; ++i) CHECK(e8_poly(i, 0) == kG0);
  CHECK(e8_poly(4, ratio(1, 100))(Rational(-1)) == ratio(3, 100));
  CHECK(e8_poly(1, ratio(1, 100)) == parse_poly("(2t-1+1/100)*t^2*(2t+1)^2*(t+1)"));
  CHECK_THROWS_AS(e8_poly(5, 0), UnsupportedError);
}

TEST_CASE("upper bounds force zeros off the roots") {
  for (const auto& t : {ratio(-9, 10), ratio(3, 10)}) {
    auto r = distribution_upper(g0_on(IntervalSet::point(t)), 240, -kG0(t));
    CHECK(r.raw == 0);
    CHECK(r.rounded == 0);
    CHECK(r.forces_zero());
    CHECK(r.rigor == Rigor::Rigorous);
  }
  // The default a is the certified -max g on T.
  auto d = distribution_upper(g0_on(IntervalSet::point(ratio(-9, 10))), 240);
  CHECK(d.a == -kG0(ratio(-9, 10)));
}

TEST_CASE("upper bound arithmetic") {
  // Inflating B so that the numerator equals 6a gives Q = 1.
  const Rational t(-9, 10);
  const Rational a = -kG0(t);
  const long N = 240;
  auto cert = g0_on(IntervalSet::point(t));
  cert.B += 2 * a / (N - 1);
  auto r = distribution_upper(cert, N, a);
  CHECK(r.raw == 1);
  CHECK(r.rounded == ratio(2, N));
  CHECK_FALSE(r.forces_zero());
}

TEST_CASE("upper bound premises") {
  auto cert = g0_on(IntervalSet::point(ratio(-9, 10)));
  CHECK_THROWS_AS(distribution_upper(cert, 240, Rational(0)), PremiseError);
  // -a above the value of g.
  CHECK_THROWS_AS(distribution_upper(cert, 240, Rational(1)), PremiseError);
  // g0 vanishes at 0, so no a > 0 works on a window around it.
  CHECK_THROWS_AS(distribution_upper(g0_on(IntervalSet::interval(ratio(-1, 10), ratio(1, 10))), 240), PremiseError);
  auto broken = cert;
  broken.B = 17;
  CHECK_THROWS_AS(distribution_upper(broken, 240), PremiseError);
}

TEST_CASE("lower bounds") {
  auto c1 = e8_certificate(1, ratio(1, 100));
  auto r1 = distribution_lower(c1, 240, ratio(3, 200));
  CHECK(r1.raw == 6720);
  CHECK(r1.rounded == 56);

  std::vector<ClosedInterval> support{{Rational(-1), Rational(-1)}, {ratio(-1, 2), ratio(-1, 2)},
                                      {Rational(0), Rational(0)}, {ratio(1, 2), ratio(1, 2)}, {Rational(1), Rational(1)}};
  auto r4 = distribution_lower(e8_certificate(4, ratio(1, 100)), 240, std::nullopt, IntervalSet(support));
  CHECK(r4.a == ratio(3, 100));
  CHECK(r4.rounded == 1);

  // With g = g0 the numerator f0 N^2 - F(1,1,1) - 3(N-1)B vanishes at N = 240.
  auto zero = distribution_lower(g0_on(IntervalSet::point(ratio(-9, 10))), 240, Rational(1));
  CHECK(zero.raw == 0);
  CHECK(zero.rounded == 0);

  CHECK_THROWS_AS(distribution_lower(c1, 240, Rational(0)), PremiseError);
  CHECK_THROWS_AS(distribution_lower(c1, 240, ratio(1, 1000)), PremiseError);
}

TEST_CASE("the E8 pipeline") {
  auto report = e8_uniqueness_pipeline(kDefaultA);
  CHECK(report.P == std::array<Rational, 4>{56, 126, 56, 1});
  CHECK(report.rigor == Rigor::Rigorous);
  DistanceDistribution expected;
  expected.N = 240;
  expected.entries = {{Rational(-1), 1}, {ratio(-1, 2), 56}, {Rational(0), 126}, {ratio(1, 2), 56}, {Rational(1), 1}};
  CHECK(report.distribution == expected);
  CHECK(report.distribution == distance_distribution(gen_e8_kissing()));
  CHECK(report.T[1] == IntervalSet::interval(ratio(-1, 100), ratio(1, 100)));
  REQUIRE_FALSE(report.steps.empty());
  CHECK(report.steps.back().name == "closing");
}

TEST_CASE("the pipeline does not depend on a") {
  std::array<Rational, 4> small{ratio(1, 1000), ratio(1, 1000), ratio(1, 1000), ratio(1, 1000)};
  auto a = e8_uniqueness_pipeline(kDefaultA);
  auto b = e8_uniqueness_pipeline(small);
  CHECK(a.P == b.P);
  CHECK(a.R == b.R);
  CHECK(a.distribution == b.distribution);
}

TEST_CASE("the pipeline aborts for large a") {
  std::array<Rational, 4> huge{Rational(10), Rational(10), Rational(10), Rational(10)};
  CHECK_THROWS_AS(e8_uniqueness_pipeline(huge), PremiseError);
  std::array<Rational, 4> bad{ratio(1, 100), Rational(0), ratio(1, 100), ratio(1, 100)};
  CHECK_THROWS_AS(e8_uniqueness_pipeline(bad), PremiseError);
}

TEST_CASE("bounds are consistent, sound against E8 and correctly rounded") {
  std::mt19937_64 rng(29);
  const auto e8 = distance_distribution(gen_e8_kissing());
  std::vector<Certificate> certs;
  for (int i = 1; i <= 4; ++i) certs.push_back(e8_certificate(i, ratio(1, 100)));
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Rational lo = random_in(rng, Rational(-1), ratio(1, 2), 1000);
    Rational hi = random_in(rng, lo, ratio(1, 2), 1000);
    auto T = IntervalSet::interval(lo, hi);
    const long N = trial % 3 == 0 ? 240 : 200 + trial;
    std::optional<DistributionBoundResult> upper, lower;
    try {
      upper = distribution_upper(g0_on(T), N);
    } catch (const PremiseError&) {
    }
    try {
      lower = distribution_lower(g0_on(T), N);
    } catch (const PremiseError&) {
    }
    for (const auto& r : {upper, lower}) {
      if (!r) continue;
      CHECK(integral(r->rounded * N / 2));
      if (N == 240) {
        Rational actual = a_sum(e8, T);
        if (r->direction == Direction::Upper) CHECK(r->rounded >= actual);
        if (r->direction == Direction::Lower) CHECK(r->rounded <= actual);
      }
    }
    if (upper && lower) CHECK(lower->rounded <= upper->rounded);
    if (upper || lower) ++checked;
  }
  CHECK(checked > 10);
  for (const auto& c : certs) {
    auto r = distribution_lower(c, 240);
    CHECK(integral(r.rounded * 120));
    CHECK(r.rounded <= a_sum(e8, c.T));
  }
}

TEST_CASE("A_t vanishes off the four roots") {
  std::mt19937_64 rng(31);
  int tested = 0;
  while (tested < 100) {
    Rational t = random_in(rng, Rational(-1), ratio(1, 2), 997);
    if (t == -1 || t == ratio(-1, 2) || t == 0 || t == ratio(1, 2)) continue;
    auto r = distribution_upper(g0_on(IntervalSet::point(t)), 240);
    CHECK(r.forces_zero());
    ++tested;
  }
}
