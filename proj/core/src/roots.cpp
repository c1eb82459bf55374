#include "spherebound/roots.hpp"

#include <algorithm>

#include "spherebound/common.hpp"

namespace spherebound {

namespace {

int sgn(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

SturmSequence::SturmSequence(const RationalPoly& squarefree) {
  chain_.push_back(squarefree);
  if (squarefree.degree() <= 0) return;
  chain_.push_back(squarefree.derivative());
  while (chain_.back().degree() > 0) {
    const auto& a = chain_[chain_.size() - 2];
    const auto& b = chain_.back();
    RationalPoly r = divmod(a, b).second;
    if (r.is_zero()) break;
    // Only signs matter; normalizing keeps coefficients small.
    Rational scale = abs(r.leading());
    r *= Rational(-1 / scale);
    chain_.push_back(std::move(r));
  }
}

int SturmSequence::sign_changes(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
  return sign_changes(lo) - sign_changes(hi);
}

namespace {

class Isolator {
 public:
  Isolator(const RationalPoly& squarefree) : q_(squarefree), sturm_(squarefree) {}

  int roots_open(const Rational& a, const Rational& b) const {
    return sturm_.count_roots(a, b) - (q_(b) == 0 ? 1 : 0);
  }

  void run(const Rational& a, const Rational& b, std::vector<RootInterval>& out) const {
    const int k = roots_open(a, b);
    if (k == 0) return;
    if (k == 1 && q_(a) != 0 && q_(b) != 0) {
      out.push_back({a, b});
      return;
    }
    Rational mid = (a + b) / 2;
    run(a, mid, out);
    if (q_(mid) == 0) out.push_back({mid, mid});
    run(mid, b, out);
  }

  const RationalPoly& poly() const { return q_; }

 private:
  RationalPoly q_;
  SturmSequence sturm_;
};

// One bisection step on a non-exact isolating interval of q.
RootInterval bisect_once(const RationalPoly& q, RootInterval root) {
  Rational mid = (root.lo + root.hi) / 2;
  int s = sgn(q(mid));
  if (s == 0) return {mid, mid};
  if (s == sgn(q(root.lo))) {
    root.lo = mid;
  } else {
    root.hi = mid;
  }
  return root;
}

RootInterval refine_squarefree(const RationalPoly& q, RootInterval root, const Rational& max_width) {
  if (root.exact()) return root;
  auto try_simplest = [&](const RootInterval& r) -> std::optional<Rational> {
    Rational s = simplest_between(r.lo, r.hi);
    if (q(s) == 0) return s;
    return std::nullopt;
  };
  if (auto s = try_simplest(root)) return {*s, *s};
  int sign_lo = sgn(q(root.lo));
  while (root.width() > max_width) {
    Rational mid = (root.lo + root.hi) / 2;
    int s = sgn(q(mid));
    if (s == 0) return {mid, mid};
    if (s == sign_lo) {
      root.lo = mid;
    } else {
      root.hi = mid;
    }
  }
  if (auto s = try_simplest(root)) return {*s, *s};
  return root;
}

}  // namespace

std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error("cannot isolate the roots of the zero polynomial");
  if (lo > hi) throw Error("isolate_roots: empty interval");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  RationalPoly q = squarefree_part(p);
  if (lo == hi) {
    if (q(lo) == 0) out.push_back({lo, lo});
    return out;
  }
  Isolator isolator(q);
  if (q(lo) == 0) out.push_back({lo, lo});
  isolator.run(lo, hi, out);
  if (q(hi) == 0) out.push_back({hi, hi});
  // Neighbouring intervals from the bisection may share an endpoint.
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    while (out[i].hi >= out[i + 1].lo) {
      if (!out[i].exact()) out[i] = bisect_once(q, out[i]);
      if (!out[i + 1].exact()) out[i + 1] = bisect_once(q, out[i + 1]);
    }
  }
  return out;
}

RootInterval refine_root(const RationalPoly& p, RootInterval root, const Rational& max_width) {
  return refine_squarefree(squarefree_part(p), std::move(root), max_width);
}

SignVerdict sign_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error("sign_on_interval: lo > hi");
  SignVerdict verdict;
  if (p.is_zero()) {
    verdict.sign = Sign::IdenticallyZero;
    return verdict;
  }
  auto roots = isolate_roots(p, lo, hi);
  verdict.root_count = static_cast<int>(roots.size());

  std::vector<Rational> samples{lo, hi};
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const auto& a = roots[i];
    const auto& b = roots[i + 1];
    if (!a.exact()) {
      samples.push_back(a.hi);
    } else if (!b.exact()) {
      samples.push_back(b.lo);
    } else {
      samples.push_back((a.hi + b.lo) / 2);
    }
  }
  for (const auto& x : samples) {
    Rational v = p(x);
    if (v > 0 && !verdict.positive_witness) verdict.positive_witness = x;
    if (v < 0 && !verdict.negative_witness) verdict.negative_witness = x;
  }
  if (verdict.positive_witness && verdict.negative_witness) {
    verdict.sign = Sign::Mixed;
  } else if (verdict.positive_witness) {
    verdict.sign = Sign::NonNegative;
  } else if (verdict.negative_witness) {
    verdict.sign = Sign::NonPositive;
  } else {
    verdict.sign = Sign::IdenticallyZero;
  }
  if (verdict.sign != Sign::Mixed) {
    verdict.positive_witness.reset();
    verdict.negative_witness.reset();
  }
  return verdict;
}

ClosedInterval bound_on(const RationalPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) return {Rational(0), Rational(0)};
  Rational lo = p.leading();
  Rational hi = lo;
  for (int i = p.degree() - 1; i >= 0; --i) {
    Rational c1 = lo * a, c2 = lo * b, c3 = hi * a, c4 = hi * b;
    lo = std::min({c1, c2, c3, c4});
    hi = std::max({c1, c2, c3, c4});
    lo += p.coeffs()[static_cast<std::size_t>(i)];
    hi += p.coeffs()[static_cast<std::size_t>(i)];
  }
  return {lo, hi};
}

Rational default_max_width() { return pow10_inverse(12); }

MaxBound max_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi,
                         const Rational& max_width) {
  if (lo > hi) throw Error("max_on_interval: lo > hi");
  MaxBound best{p(lo), {lo, lo}, true};
  auto consider = [&best](MaxBound candidate) {
    if (candidate.bound > best.bound || (candidate.bound == best.bound && candidate.exact && !best.exact)) {
      best = std::move(candidate);
    }
  };
  consider({p(hi), {hi, hi}, true});
  if (lo == hi || p.degree() <= 1) return best;

  const RationalPoly dp = p.derivative();
  const RationalPoly dq = squarefree_part(dp);
  for (auto root : isolate_roots(dp, lo, hi)) {
    if (root.exact() && (root.lo == lo || root.lo == hi)) continue;
    root = refine_squarefree(dq, root, max_width);
    if (root.exact()) {
      consider({p(root.lo), root, true});
      continue;
    }
    const Rational mid = (root.lo + root.hi) / 2;
    const Rational half = root.width() / 2;
    auto slope = bound_on(dp, root.lo, root.hi);
    Rational lipschitz = std::max(abs(slope.lo), abs(slope.hi));
    consider({p(mid) + half * lipschitz, root, false});
  }
  return best;
}

MaxBound min_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi,
                         const Rational& max_width) {
  MaxBound r = max_on_interval(-p, lo, hi, max_width);
  r.bound = -r.bound;
  return r;
}

}  // namespace spherebound
