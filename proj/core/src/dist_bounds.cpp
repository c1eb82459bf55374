#include "spherebound/dist_bounds.hpp"

#include "spherebound/roots.hpp"

namespace spherebound {

bool DistributionBoundResult::forces_zero() const {
  return direction == Direction::Upper && T.parts().size() == 1 && T.parts().front().is_point() && raw < 1;
}

namespace {

Rational certified_max(const Certificate& cert) {
  if (cert.T.empty()) throw PremiseError("T nonempty", "the distribution bounds need a nonempty T");
  return h_1(cert.g, cert.T).upper;
}

DistributionBoundResult finish(const Certificate& cert, long N, Direction direction, const Rational& a,
                               const Rational& raw, Rigor rigor) {
  DistributionBoundResult r;
  r.T = cert.T;
  r.direction = direction;
  r.N = N;
  r.a = a;
  r.raw = raw;
  Integer k = direction == Direction::Upper ? floor(raw) : ceil(raw);
  r.rounded = Rational(2 * k) / N;
  r.rounded.canonicalize();
  r.rigor = rigor;
  return r;
}

}  // namespace

DistributionBoundResult distribution_upper(const Certificate& cert, long N, std::optional<Rational> a) {
  if (N < 1) throw UnsupportedError("N must be positive");
  CertReport report = verify(cert);
  require_verified(cert, report);
  Rational max = certified_max(cert);
  if (!a) a = -max;
  if (*a <= 0) throw PremiseError("a > 0", "a = " + to_string(*a));
  if (max > -*a) {
    throw PremiseError("g(t) <= -a on T", "certified max of g on T is " + to_string(max) + ", -a = " + to_string(-*a));
  }
  const Rational n = N;
  Rational Q = (cert.F111() + 3 * (n - 1) * cert.B - cert.f0 * n * n) / (6 * *a);
  return finish(cert, N, Direction::Upper, *a, Q, report.rigor());
}

DistributionBoundResult distribution_lower(const Certificate& cert, long N, std::optional<Rational> a,
                                         const std::optional<IntervalSet>& support) {
  if (N < 1) throw UnsupportedError("N must be positive");
  CertReport report = verify(cert);
  require_verified(cert, report);
  IntervalSet where = cert.T;
  if (support) {
    std::vector<ClosedInterval> parts;
    for (const auto& p : cert.T.parts()) {
      for (auto& q : support->intersect(p.lo, p.hi)) parts.push_back(std::move(q));
    }
    where = IntervalSet(std::move(parts));
  }
  std::optional<Rational> max;
  if (!where.empty()) max = h_1(cert.g, where).upper;
  if (!a) {
    if (!max) throw PremiseError("a given", "the support misses T; supply a");
    a = *max;
  }
  if (*a <= 0) throw PremiseError("a > 0", "a = " + to_string(*a));
  if (max && *max > *a) {
    throw PremiseError("g(t) <= a on T", "certified max of g is " + to_string(*max) + ", a = " + to_string(*a));
  }
  const Rational n = N;
  Rational R = (cert.f0 * n * n - cert.F111() - 3 * (n - 1) * cert.B) / (6 * *a);
  return finish(cert, N, Direction::Lower, *a, R, report.rigor());
}

RationalPoly e8_poly(int i, const Rational& a) {
  const RationalPoly t = RationalPoly::identity();
  const RationalPoly one = RationalPoly::constant(1);
  const RationalPoly A = RationalPoly::constant(a);
  RationalPoly f1 = 2 * Rational(1) * t - one;  // 2t - 1
  RationalPoly f2 = t * t;
  RationalPoly f3 = (2 * Rational(1) * t + one).pow(2);
  RationalPoly f4 = t + one;
  switch (i) {
    case 0: break;
    case 1: f1 += A; break;
    case 2: f2 -= A * A; break;
    case 3: f3 -= A * A; break;
    case 4: f4 -= A; break;
    default: throw UnsupportedError("g_i is defined for i = 0..4");
  }
  return f1 * f2 * f3 * f4;
}

IntervalSet e8_window(int i, const Rational& a) {
  const Rational half(1, 2);
  switch (i) {
    case 1: return IntervalSet::interval(half - a / 2, half);
    case 2: return IntervalSet::interval(-a, a);
    case 3: return IntervalSet::interval(-half - a, -half + a);
    case 4: return IntervalSet::interval(Rational(-1), a - 1);
    default: throw UnsupportedError("T_i is defined for i = 1..4");
  }
}

Certificate e8_certificate(int i, const Rational& a) {
  Certificate c;
  c.dim = 8;
  c.cos_theta = Rational(1, 2);
  RationalPoly g = e8_poly(i, a);
  c.degree = g.degree();
  GegExpansion e = expand(g, 8);
  c.f0 = 3 * e.coeffs[0];
  c.form = SeparableForm{g};
  c.B = g(Rational(1));
  if (i > 0) {
    c.T = e8_window(i, a);
    c.g = g;
  }
  return c;
}

E8UniquenessReport e8_uniqueness_pipeline(const std::array<Rational, 4>& a) {
  const long N = 240;
  const Rational s(1, 2);
  E8UniquenessReport out;
  auto step = [&](std::string name, std::string detail, Rigor rigor = Rigor::Rigorous) {
    out.rigor = min_rigor(out.rigor, rigor);
    out.steps.push_back({std::move(name), std::move(detail), rigor});
  };

  // Zero pattern from g0.
  const RationalPoly g0 = e8_poly(0);
  GegExpansion e0 = expand(g0, 8);
  if (!e0.all_positive()) throw PremiseError("c_{k,0} > 0", "g0 has a nonpositive Gegenbauer coefficient");
  Rational D = g0(Rational(1)) - N * e0.coeffs[0];
  if (D != 0) throw PremiseError("D = 0", "g0(1) - 240 c_{0,0} = " + to_string(D));
  Certificate c0 = e8_certificate(0, 0);
  require_verified(c0, verify(c0));
  SignVerdict sign = sign_on_interval(g0, Rational(-1), s);
  if (!is_nonpositive(sign)) throw PremiseError("g0 <= 0 on [-1, 1/2]", "sign check failed");
  // Four distinct roots in [-1, 1/2], and the four targets are roots.
  const std::array<Rational, 4> targets{s, Rational(0), -s, Rational(-1)};
  if (sign.root_count != 4) throw PremiseError("roots of g0", "expected four roots in [-1, 1/2]");
  for (const auto& t : targets) {
    if (g0(t) != 0) throw PremiseError("roots of g0", "g0(" + to_string(t) + ") != 0");
  }
  const std::vector<Rational> zeros(targets.begin(), targets.end());
  std::vector<ClosedInterval> support{{Rational(1), Rational(1)}};
  for (const auto& t : targets) support.push_back({t, t});
  {
    Certificate probe = c0;
    probe.T = IntervalSet::point(Rational(-9, 10));
    probe.g = g0;
    auto q = distribution_upper(probe, N, -g0(Rational(-9, 10)));
    if (!q.forces_zero()) throw PremiseError("A_t = 0 off the roots", "Q = " + to_string(q.raw) + " at t = -9/10");
  }
  step("zero pattern",
       "c_{k,0} > 0 for k = 0..6, D = g0(1) - 240 c_{0,0} = 0, g0 <= 0 on [-1, 1/2] with roots {-1, -1/2, 0, 1/2}; "
       "hence Q = 120 D / g0(t) = 0 and A_t = 0 for every other t in [-1, 1/2]");

  // Positivity of the perturbed expansions.
  for (int i = 0; i < 4; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    if (a[k] <= 0) throw PremiseError("a_i > 0", "a_" + std::to_string(i + 1) + " <= 0");
    const std::string tag = std::to_string(i + 1);
    GegExpansion e = expand(e8_poly(i + 1, a[k]), 8);
    for (std::size_t j = 0; j < e.coeffs.size(); ++j) {
      if (e.coeffs[j] <= 0) {
        throw PremiseError("c_{k," + tag + "} > 0", "c_{" + std::to_string(j) + "," + tag + "} = " + to_string(e.coeffs[j]));
      }
    }
  }
  step("perturbed expansions", "c_{k,i} > 0 for k = 0..6 and i = 1..4");

  // Windows around the roots t_1 = 1/2, t_2 = 0, t_3 = -1/2, t_4 = -1.
  for (int i = 0; i < 4; ++i) {
    out.T[static_cast<std::size_t>(i)] = e8_window(i + 1, a[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < 4; ++i) {
    const auto& Ti = out.T[static_cast<std::size_t>(i)];
    if (!Ti.within(Rational(-1), s)) throw PremiseError("T_i within [-1, 1/2]", "T_" + std::to_string(i + 1) + " = " + Ti.to_string());
    for (int j = i + 1; j < 4; ++j) {
      if (!Ti.disjoint_from(out.T[static_cast<std::size_t>(j)])) {
        throw PremiseError("T_i disjoint", "T_" + std::to_string(i + 1) + " meets T_" + std::to_string(j + 1));
      }
    }
    int inside = 0;
    for (const auto& z : zeros) inside += Ti.contains(z) ? 1 : 0;
    if (inside != 1 || !Ti.contains(targets[static_cast<std::size_t>(i)])) {
      throw PremiseError("one root per window", "T_" + std::to_string(i + 1) + " must hold exactly the root " +
                                                     to_string(targets[static_cast<std::size_t>(i)]));
    }
  }
  step("windows", "T_1..T_4 are disjoint subsets of [-1, 1/2], each holding exactly one root of g0");

  // Lower bounds on A(T_i).
  for (int i = 0; i < 4; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const std::string tag = std::to_string(i + 1);
    Certificate ci = e8_certificate(i + 1, a[k]);
    CertReport report = verify(ci);
    if (auto f = report.first_failure()) {
      throw PremiseError("F_" + tag + " in class: " + f->condition, f->verdict.detail);
    }
    // By the zero pattern only t_i carries mass inside T_i, so g_i(t_i)
    // serves as a even where g_i peaks slightly off t_i.
    auto lower = distribution_lower(ci, N, std::nullopt, IntervalSet(support));
    out.R[k] = lower.raw;
    out.P[k] = lower.rounded;
    step("P_" + tag,
         "F_" + tag + " verified on T_" + tag + " = " + ci.T.to_string() + ", a = " +
             to_string(lower.a) + " = g_" + tag + "(t_" + tag + "), R = " + to_string(lower.raw) + ", A(T_" + tag + ") >= " + to_string(lower.rounded),
         lower.rigor);
  }

  // Closing count: the T_i are disjoint inside [-1, 1/2] and A([-1, 1/2]) = N - 1.
  Rational total = 0;
  for (const auto& p : out.P) total += p;
  if (total != N - 1) {
    throw PremiseError("sum of P_i = N - 1", "sum of P_i = " + to_string(total) + ", expected " + std::to_string(N - 1));
  }
  out.distribution.N = N;
  out.distribution.entries[Rational(1)] = 1;
  for (std::size_t i = 0; i < 4; ++i) out.distribution.entries[targets[i]] = out.P[i];
  step("closing", "sum of P_i = 239 = A([-1, 1/2]), so every A(T_i) = P_i and A_{t_i} = P_i");
  return out;
}

}  // namespace spherebound
