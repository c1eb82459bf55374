#pragma once

#include <optional>
#include <vector>

#include "spherebound/intervals.hpp"
#include "spherebound/poly.hpp"
#include "spherebound/rational.hpp"

namespace spherebound {

/// Sturm sequence of a squarefree polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPoly& squarefree);

  int sign_changes(const Rational& x) const;
  /// Number of distinct roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<RationalPoly> chain_;
};

/// A closed rational interval holding exactly one root; lo == hi when the
/// root is known exactly. Endpoints of non-degenerate intervals are not roots.
struct RootInterval {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

/// Isolates every distinct real root of p in the closed interval [lo, hi].
/// The returned intervals are disjoint, sorted, and lie inside [lo, hi].
/// p must be nonzero.
std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& lo, const Rational& hi);

/// Shrinks an isolating interval of a root of p until its width is at most
/// max_width; tries the simplest rational in the interval as an exact root.
RootInterval refine_root(const RationalPoly& p, RootInterval root, const Rational& max_width);

enum class Sign { NonNegative, NonPositive, Mixed, IdenticallyZero };

struct SignVerdict {
  Sign sign = Sign::IdenticallyZero;
  /// Present for Mixed verdicts: points where p > 0 and where p < 0.
  std::optional<Rational> positive_witness;
  std::optional<Rational> negative_witness;
  /// Distinct roots of p found in the interval.
  int root_count = 0;
};

/// Exact sign of p on [lo, hi] from Sturm root isolation plus evaluation at
/// one rational point in each root-free piece. lo == hi reduces to a point
/// evaluation. A polynomial that vanishes identically on the interval (only
/// possible for the zero polynomial) gives IdenticallyZero; a nonzero
/// polynomial whose sample values are all zero cannot occur.
SignVerdict sign_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi);

inline bool is_nonnegative(const SignVerdict& v) {
  return v.sign == Sign::NonNegative || v.sign == Sign::IdenticallyZero;
}
inline bool is_nonpositive(const SignVerdict& v) {
  return v.sign == Sign::NonPositive || v.sign == Sign::IdenticallyZero;
}

/// Rational enclosure [lo, hi] of p over [a, b] from interval Horner evaluation.
ClosedInterval bound_on(const RationalPoly& p, const Rational& a, const Rational& b);

struct MaxBound {
  /// Certified bound: an upper bound for max_on_interval, a lower bound for
  /// min_on_interval.
  Rational bound;
  /// Interval containing the extremizer (degenerate when known exactly).
  RootInterval location;
  /// True when bound equals the extremum exactly.
  bool exact = false;
};

/// Default tightness 10^-12 for max_on_interval.
Rational default_max_width();

/// Certified maximum of p on [lo, hi]. Critical points are isolated exactly
/// via the derivative; irrational ones are refined to width max_width and
/// bounded with a mean-value enclosure.
MaxBound max_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi,
                         const Rational& max_width = default_max_width());

/// Certified lower bound for min p on [lo, hi] (as max of -p, negated).
MaxBound min_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi,
                         const Rational& max_width = default_max_width());

}  // namespace spherebound
