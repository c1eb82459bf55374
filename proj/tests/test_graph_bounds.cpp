#include <cmath>
#include <random>

#include "doctest.h"
#include "spherebound/cert_io.hpp"
#include "spherebound/codes.hpp"
#include "spherebound/dist_bounds.hpp"
#include "spherebound/graph_bounds.hpp"
#include "support.hpp"

using namespace spherebound;
using testing_support::random_in;
using testing_support::random_rational;

namespace {

const RationalPoly kG0 = parse_poly("(2t-1)*t^2*(2t+1)^2*(t+1)");

DistanceGraph disjoint_edges(std::size_t pairs, std::size_t isolated = 0) {
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < pairs; ++i) edges.push_back({2 * i, 2 * i + 1, Rational(-1)});
  return DistanceGraph::from_edges(2 * pairs + isolated, edges);
}

// Disjoint paths with the given vertex counts (1, 2 or 3).
DistanceGraph paths(const std::vector<std::size_t>& sizes) {
  std::vector<GraphEdge> edges;
  std::size_t next = 0;
  for (auto s : sizes) {
    for (std::size_t i = 1; i < s; ++i) edges.push_back({next + i - 1, next + i, Rational(-1)});
    next += s;
  }
  return DistanceGraph::from_edges(next, edges);
}

TauInputs inputs(const Rational& h1, const Rational& h2, const Rational& hath) {
  TauInputs in;
  in.h1 = h1;
  in.h1_lower = h1;
  in.h2 = h2;
  in.hath = hath;
  return in;
}

// Random points on S^2 with pairwise cosines at most 1/2.
SphericalCode random_code(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> pts;
  for (int attempt = 0; attempt < 400 && pts.size() < 12; ++attempt) {
    std::vector<double> v{gauss(rng), gauss(rng), gauss(rng)};
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c /= norm;
    bool ok = true;
    for (const auto& p : pts) ok = ok && p[0] * v[0] + p[1] * v[1] + p[2] * v[2] <= 0.5;
    if (ok) pts.push_back(v);
  }
  return SphericalCode::floating(3, pts);
}

}  // namespace

TEST_CASE("distance graph examples") {
  auto e8 = DistanceGraph::from_code(gen_e8_kissing(), IntervalSet::point(Rational(-1, 2)));
  CHECK(e8.size() == 240);
  CHECK(e8.edges().size() == 6720);
  CHECK(e8.max_degree() == 56);

  auto cross = DistanceGraph::from_code(gen_cross_polytope(4), IntervalSet::point(Rational(-1)));
  CHECK(cross.edges().size() == 4);
  CHECK(cross.k(2) == 4);
  CHECK(cross.k(1) == 0);

  auto empty = DistanceGraph::from_code(gen_24cell(), IntervalSet());
  CHECK(empty.edges().empty());
  CHECK(empty.k(1) == 24);

  CHECK_THROWS(DistanceGraph::from_edges(3, {{0, 0, Rational(0)}}));
  CHECK_THROWS(DistanceGraph::from_edges(3, {{0, 1, Rational(0)}, {1, 0, Rational(0)}}));
  CHECK(cross.adjacency_text().find("0: 1(-1)\n") != std::string::npos);
}

TEST_CASE("edge sums") {
  auto e8 = DistanceGraph::from_code(gen_e8_kissing(), IntervalSet::point(Rational(-1, 2)));
  CHECK(h_g_sum(e8, RationalPoly::constant(1)) == 6720);
  CHECK(h_g_sum(e8, RationalPoly::identity()) == -3360);
  auto none = DistanceGraph::from_code(gen_e8_kissing(), IntervalSet());
  CHECK(h_g_sum(none, kG0) == 0);
  auto antipodal = SphericalCode::exact(2, {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}});
  auto pair = DistanceGraph::from_code(antipodal, IntervalSet::point(Rational(-1)));
  CHECK(h_g_sum(pair, RationalPoly::identity()) == -1);
}

TEST_CASE("triangles") {
  CHECK(triangle_free(disjoint_edges(5)));
  auto tri = DistanceGraph::from_edges(4, {{0, 1, Rational(0)}, {1, 2, Rational(0)}, {2, 0, Rational(0)}});
  auto t = find_triangle(tri);
  REQUIRE(t);
  std::array<std::size_t, 3> sorted = *t;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("graphs with obtuse edges are triangle free") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    auto code = random_code(rng);
    auto G = DistanceGraph::from_code(code, IntervalSet::interval(Rational(-1), Rational(-11, 20)));
    CHECK(triangle_free(G));
  }
}

TEST_CASE("edge counts match the distance distribution") {
  std::mt19937_64 rng(41);
  for (const char* name : {"e8", "24cell", "cross5", "simplex6"}) {
    auto code = generate_code(name);
    CosineTable table(code);
    auto dist = distance_distribution(table);
    for (int trial = 0; trial < 10; ++trial) {
      Rational lo = random_in(rng, Rational(-1), Rational(1, 2), 20);
      Rational hi = random_in(rng, lo, Rational(1, 2), 20);
      IntervalSet T = trial == 0 ? IntervalSet() : IntervalSet::interval(lo, hi);
      auto G = DistanceGraph::from_table(table, T);
      Rational N = static_cast<long>(code.size());
      CHECK(Rational(static_cast<long>(G.edges().size())) == N * a_sum(dist, T) / 2);
      std::size_t total = 0;
      for (auto s : G.component_sizes()) total += s;
      CHECK(total == code.size());
      std::size_t big = 0;
      for (auto s : G.component_sizes()) big += s > 3 ? s : 0;
      CHECK(G.k(1) + 2 * G.k(2) + 3 * G.k(3) + big == code.size());
    }
  }
}

TEST_CASE("tau bounds") {
  const Rational h1(3, 2), h2(1, 2), hath(3, 2);
  auto G = disjoint_edges(4);
  auto prop = tau_upper(G, inputs(h1, h2, hath), TauMethod::Prop1);
  // Equality case: G = k_2 K_2 with N = 2 k_2 gives 2 tau <= 2 k_2 h_1.
  CHECK(2 * prop.value(8) == 2 * 4 * h1);
  CHECK(prop.method == TauMethod::Prop1);

  auto nh = tau_upper(G, inputs(h1, h2, hath), TauMethod::NHatH);
  CHECK(2 * nh.value(8) == 8 * hath);

  auto empty = DistanceGraph::from_edges(6, {});
  auto m1 = tau_upper(empty, inputs(h1, h2, hath), TauMethod::M1Refined);
  CHECK(m1.value(6) == 0);

  auto user = tau_user(Rational(7));
  CHECK(user.value(1000) == 7);
  CHECK(user.rigor == Rigor::Heuristic);
  CHECK_THROWS_AS(tau_upper(G, inputs(h1, h2, hath), TauMethod::UserSupplied), UnsupportedError);
}

TEST_CASE("tau premises are enforced") {
  auto in = inputs(Rational(1), Rational(1), Rational(1));
  CHECK_THROWS_AS(tau_upper(disjoint_edges(2), in, TauMethod::Prop1), PremiseError);
  auto missing = inputs(Rational(1), Rational(0), Rational(1));
  missing.h2.reset();
  CHECK_THROWS_AS(tau_upper(disjoint_edges(2), missing, TauMethod::Prop1), PremiseError);

  auto ok = inputs(Rational(1), Rational(0), Rational(1));
  auto star = DistanceGraph::from_edges(4, {{0, 1, Rational(-1)}, {0, 2, Rational(-1)}, {0, 3, Rational(-1)}});
  CHECK_THROWS_AS(tau_upper(star, ok, TauMethod::Prop1), PremiseError);
  auto tri = DistanceGraph::from_edges(3, {{0, 1, Rational(-1)}, {1, 2, Rational(-1)}, {2, 0, Rational(-1)}});
  CHECK_THROWS_AS(tau_upper(tri, ok, TauMethod::Prop1), PremiseError);
  CHECK_THROWS_AS(tau_upper(paths({4}), ok, TauMethod::Prop1), PremiseError);
  CHECK_NOTHROW(tau_upper(paths({3, 2, 1}), ok, TauMethod::Prop1));
  CHECK_THROWS_AS(tau_upper(paths({3}), ok, TauMethod::M1Refined), PremiseError);
  try {
    tau_upper(star, ok, TauMethod::Prop1);
  } catch (const PremiseError& e) {
    CHECK(e.condition() == "max degree <= 2");
  }
}

TEST_CASE("Prop1 never exceeds the N hat h bound") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> size(1, 3), count(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> sizes(count(rng));
    for (auto& s : sizes) s = size(rng);
    auto G = paths(sizes);
    Rational h2 = random_rational(rng, 10, 4);
    Rational h1 = h2 + abs(random_rational(rng, 10, 4)) + ratio(1, 7);
    Rational hath = std::max(h1, Rational(0));
    auto in = inputs(h1, h2, hath);
    Rational N = static_cast<long>(G.size());
    auto p = tau_upper(G, in, TauMethod::Prop1);
    auto n = tau_upper(G, in, TauMethod::NHatH);
    CHECK(p.value(N) <= n.value(N));
  }
}

TEST_CASE("graph bound against the other bounds") {
  const Rational F111(54), f0(9, 40), B(18), hath(1);
  auto G = disjoint_edges(1, 238);
  auto in = inputs(Rational(1), Rational(0), hath);
  // tau = N hat h / 2 reproduces the restricted three-point bound.
  auto nh = graph_bound(F111, f0, B, tau_upper(G, in, TauMethod::NHatH));
  CHECK(nh.max_n == restricted_bound(F111, f0, B, hath, Rigor::Rigorous).max_n);
  CHECK(nh.max_n == 253);
  // tau = 0 reproduces the three-point bound.
  CHECK(graph_bound(F111, f0, B, tau_user(0)).max_n == three_point_bound(F111, f0, B).max_n);
  // A single edge: 2 tau <= 2 h_1 is much smaller than N hat h.
  auto prop = graph_bound(F111, f0, B, tau_upper(G, in, TauMethod::Prop1));
  CHECK(prop.max_n == 240);
  CHECK(prop.max_n < nh.max_n);
  CHECK_THROWS_AS(graph_bound(F111, 0, B, tau_user(0)), PremiseError);
}

TEST_CASE("graph bounds are sound for the shipped certificate") {
  auto cert = read_certificate_file(testing_support::data_path("certs/e8_g1_n8.cert"));
  auto code = gen_e8_kissing();
  auto G = DistanceGraph::from_code(code, cert.T);
  // tau for this code is at most the actual edge sum of g_T.
  auto bound = graph_bound(cert.F111(), cert.f0, cert.B, tau_user(h_g_sum(G, cert.g)));
  CHECK(bound.max_n >= 240);
}

TEST_CASE("contact edge lower bound") {
  auto cert = read_certificate_file(testing_support::data_path("certs/e8_g1_n8.cert"));
  auto c = contact_edge_lower_bound(cert, 240, Rational(1, 2), Rational(1, 200));
  CHECK(c.R == 6720);
  CHECK(c.edges_lower == 6720);
  CHECK(c.P == 28);
  CHECK(c.rigor == Rigor::Rigorous);
  // |E| = N A(T) / 2, so A(T_a) >= 2 P_a = 56.
  auto actual = DistanceGraph::from_code(gen_e8_kissing(), IntervalSet::interval(Rational(99, 200), Rational(1, 2)));
  CHECK(Rational(static_cast<long>(actual.edges().size())) >= Rational(c.edges_lower));

  // The plain LP polynomial has a zero numerator at N = 240.
  auto lp = read_certificate_file(testing_support::data_path("certs/lp_g0_n8.cert"));
  lp.g = e8_poly(1, Rational(1, 100));
  auto z = contact_edge_lower_bound(lp, 240, Rational(1, 2), Rational(1, 200));
  CHECK(z.R == 0);
  CHECK(z.P == 0);

  // g1 is not monotone on a wide window, and g0(1/2) = 0.
  CHECK_THROWS_AS(contact_edge_lower_bound(cert, 240, Rational(1, 2), Rational(1, 2)), PremiseError);
  auto flat = lp;
  flat.g = kG0;
  CHECK_THROWS_AS(contact_edge_lower_bound(flat, 240, Rational(1, 2), Rational(1, 200)), PremiseError);
}

TEST_CASE("contact sweep records failures") {
  auto cert = read_certificate_file(testing_support::data_path("certs/e8_g1_n8.cert"));
  auto sweep = contact_sweep(cert, 240, Rational(1, 2),
                             {Rational(1, 2), Rational(1, 100), Rational(1, 200), Rational(1, 400)});
  REQUIRE(sweep.size() == 4);
  // Too wide: g is not monotone. Too narrow: g > 0 just left of T_a.
  CHECK_FALSE(sweep[0].bound);
  CHECK_FALSE(sweep[0].failure.empty());
  CHECK_FALSE(sweep[3].bound);
  CHECK_FALSE(sweep[3].failure.empty());
  REQUIRE(sweep[1].bound);
  REQUIRE(sweep[2].bound);
  CHECK(sweep[2].bound->P == 28);
  CHECK(sweep[1].bound->edges_lower == sweep[2].bound->edges_lower);
}
