#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spherebound/rational.hpp"

namespace spherebound {

struct ClosedInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
  bool operator==(const ClosedInterval&) const = default;
};

/// Finite union of closed rational intervals, kept sorted and merged.
///
/// Text form: items joined by "U" (or ';'), each item either "[a,b]" or a
/// point list "{a,b,...}". "{}" and "empty" denote the empty set.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<ClosedInterval> parts);

  static IntervalSet interval(const Rational& lo, const Rational& hi);
  static IntervalSet point(const Rational& x);
  static IntervalSet parse(std::string_view text);

  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;
  bool contains(double x) const;
  const std::vector<ClosedInterval>& parts() const { return parts_; }

  /// True when every part lies in [lo, hi].
  bool within(const Rational& lo, const Rational& hi) const;
  /// True when every part lies in [lo, hi).
  bool within_half_open(const Rational& lo, const Rational& hi) const;

  /// Closures of the maximal pieces of [lo, hi] not covered by this set.
  std::vector<ClosedInterval> complement_within(const Rational& lo, const Rational& hi) const;
  /// The parts clipped to [lo, hi].
  std::vector<ClosedInterval> intersect(const Rational& lo, const Rational& hi) const;

  bool disjoint_from(const IntervalSet& other) const;

  std::string to_string() const;
  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<ClosedInterval> parts_;
};

/// Throws UnsupportedError unless T is a nonempty subset of [-1, 1).
void require_restriction_set(const IntervalSet& T);

}  // namespace spherebound
