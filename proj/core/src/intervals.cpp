#include "spherebound/intervals.hpp"

#include <algorithm>
#include <cctype>

#include "spherebound/common.hpp"

namespace spherebound {

IntervalSet::IntervalSet(std::vector<ClosedInterval> parts) {
  for (const auto& p : parts) {
    if (p.lo > p.hi) {
      throw Error("interval [" + spherebound::to_string(p.lo) + "," + spherebound::to_string(p.hi) +
                  "] has lo > hi");
    }
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi) {
      if (p.hi > parts_.back().hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

IntervalSet IntervalSet::interval(const Rational& lo, const Rational& hi) {
  return IntervalSet({ClosedInterval{lo, hi}});
}

IntervalSet IntervalSet::point(const Rational& x) { return IntervalSet({ClosedInterval{x, x}}); }

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.contains(x); });
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const auto& p) { return to_double(p.lo) <= x && x <= to_double(p.hi); });
}

bool IntervalSet::within(const Rational& lo, const Rational& hi) const {
  return std::all_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.lo >= lo && p.hi <= hi; });
}

bool IntervalSet::within_half_open(const Rational& lo, const Rational& hi) const {
  return std::all_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.lo >= lo && p.hi < hi; });
}

std::vector<ClosedInterval> IntervalSet::complement_within(const Rational& lo, const Rational& hi) const {
  if (lo == hi) {
    if (contains(lo)) return {};
    return {ClosedInterval{lo, hi}};
  }
  std::vector<ClosedInterval> out;
  Rational cursor = lo;
  for (const auto& p : parts_) {
    if (p.hi < lo) continue;
    if (p.lo > hi) break;
    if (p.lo > cursor) out.push_back({cursor, p.lo});
    if (p.hi > cursor) cursor = p.hi;
  }
  if (cursor < hi) out.push_back({cursor, hi});
  return out;
}

std::vector<ClosedInterval> IntervalSet::intersect(const Rational& lo, const Rational& hi) const {
  std::vector<ClosedInterval> out;
  for (const auto& p : parts_) {
    Rational a = p.lo < lo ? lo : p.lo;
    Rational b = p.hi > hi ? hi : p.hi;
    if (a <= b) out.push_back({a, b});
  }
  return out;
}

bool IntervalSet::disjoint_from(const IntervalSet& other) const {
  for (const auto& a : parts_) {
    for (const auto& b : other.parts_) {
      if (a.lo <= b.hi && b.lo <= a.hi) return false;
    }
  }
  return true;
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += " U ";
    const auto& p = parts_[i];
    if (p.is_point()) {
      out += "{" + spherebound::to_string(p.lo) + "}";
    } else {
      out += "[" + spherebound::to_string(p.lo) + "," + spherebound::to_string(p.hi) + "]";
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> split_items(std::string_view text, std::string_view whole) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets in interval set '" + std::string(whole) + "'");
    if (depth == 0 && (c == 'U' || c == 'u' || c == ';')) {
      items.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in interval set '" + std::string(whole) + "'");
  items.push_back(text.substr(start));
  return items;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(strip(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

IntervalSet IntervalSet::parse(std::string_view text) {
  std::string_view body = strip(text);
  if (body.empty() || body == "empty" || body == "{}") return IntervalSet{};
  std::vector<ClosedInterval> parts;
  for (std::string_view item : split_items(body, text)) {
    item = strip(item);
    if (item.size() < 2) throw ParseError("malformed interval item '" + std::string(item) + "'");
    std::string_view inner = item.substr(1, item.size() - 2);
    if (item.front() == '[' && item.back() == ']') {
      auto fields = split_commas(inner);
      if (fields.size() != 2) throw ParseError("interval '" + std::string(item) + "' needs two endpoints");
      Rational lo = parse_rational(fields[0]);
      Rational hi = parse_rational(fields[1]);
      if (lo > hi) throw ParseError("interval '" + std::string(item) + "' has lo > hi");
      parts.push_back({lo, hi});
    } else if (item.front() == '{' && item.back() == '}') {
      if (strip(inner).empty()) continue;
      for (auto field : split_commas(inner)) {
        Rational x = parse_rational(field);
        parts.push_back({x, x});
      }
    } else {
      throw ParseError("malformed interval item '" + std::string(item) + "'");
    }
  }
  return IntervalSet(std::move(parts));
}

void require_restriction_set(const IntervalSet& T) {
  if (T.empty()) throw UnsupportedError("restriction set T must be nonempty");
  if (!T.within_half_open(Rational(-1), Rational(1))) {
    throw UnsupportedError("restriction set " + T.to_string() + " must lie in [-1,1)");
  }
}

}  // namespace spherebound
