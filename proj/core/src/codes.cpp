#include "spherebound/codes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace spherebound {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational acc(0);
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

SphericalCode SphericalCode::exact(int dim, std::vector<std::vector<Rational>> points) {
  if (dim < 1) throw Error("code dimension must be positive");
  if (points.empty()) throw Error("a spherical code needs at least one point");
  SphericalCode code;
  code.dim_ = dim;
  code.mode_ = CodeMode::Exact;
  code.length_ = points.front().size();
  if (code.length_ < static_cast<std::size_t>(dim)) {
    throw Error("coordinate vectors are shorter than the code dimension");
  }
  for (auto& p : points) {
    if (p.size() != code.length_) throw Error("coordinate vectors have inconsistent lengths");
    for (auto& c : p) c.canonicalize();
  }
  code.norm2_ = dot(points.front(), points.front());
  if (code.norm2_ == 0) throw Error("zero vector in code");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (dot(points[i], points[i]) != code.norm2_) {
      throw Error("point " + std::to_string(i) + " does not share the squared norm " + to_string(code.norm2_));
    }
  }
  if (code.length_ > static_cast<std::size_t>(dim) && rank_of(points) > static_cast<std::size_t>(dim)) {
    throw Error("points span more than " + std::to_string(dim) + " dimensions");
  }
  code.exact_ = std::move(points);
  return code;
}

SphericalCode SphericalCode::floating(int dim, std::vector<std::vector<double>> points, double tolerance) {
  if (dim < 1) throw Error("code dimension must be positive");
  if (points.empty()) throw Error("a spherical code needs at least one point");
  if (!(tolerance > 0)) throw Error("float tolerance must be positive");
  SphericalCode code;
  code.dim_ = dim;
  code.mode_ = CodeMode::Float;
  code.tolerance_ = tolerance;
  code.length_ = points.front().size();
  if (code.length_ != static_cast<std::size_t>(dim)) {
    throw Error("float coordinate vectors must have exactly dim entries");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != code.length_) throw Error("coordinate vectors have inconsistent lengths");
    if (std::abs(std::sqrt(dot(points[i], points[i])) - 1.0) > tolerance) {
      throw Error("point " + std::to_string(i) + " is not a unit vector within tolerance");
    }
  }
  code.float_ = std::move(points);
  return code;
}

Rational SphericalCode::cosine(std::size_t i, std::size_t j) const {
  if (mode_ != CodeMode::Exact) throw Error("exact cosines need an exact code");
  Rational c = dot(exact_[i], exact_[j]) / norm2_;
  c.canonicalize();
  return c;
}

double SphericalCode::cosine_approx(std::size_t i, std::size_t j) const {
  if (mode_ == CodeMode::Float) return dot(float_[i], float_[j]);
  return to_double(cosine(i, j));
}

SphericalCode SphericalCode::to_float(double tolerance) const {
  if (mode_ == CodeMode::Float) return *this;
  // Orthonormal basis of the span via Gram-Schmidt in doubles keeps the
  // result in `dim` coordinates even for embedded codes.
  std::vector<std::vector<double>> raw;
  raw.reserve(exact_.size());
  const double scale = 1.0 / std::sqrt(to_double(norm2_));
  for (const auto& p : exact_) {
    std::vector<double> v(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) v[k] = to_double(p[k]) * scale;
    raw.push_back(std::move(v));
  }
  std::vector<std::vector<double>> basis;
  for (const auto& v : raw) {
    if (basis.size() == static_cast<std::size_t>(dim_)) break;
    std::vector<double> w = v;
    for (const auto& b : basis) {
      double proj = dot(w, b);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= proj * b[k];
    }
    double norm = std::sqrt(dot(w, w));
    if (norm < 1e-9) continue;
    for (auto& x : w) x /= norm;
    basis.push_back(std::move(w));
  }
  while (basis.size() < static_cast<std::size_t>(dim_)) basis.emplace_back(length_, 0.0);
  std::vector<std::vector<double>> out;
  out.reserve(raw.size());
  for (const auto& v : raw) {
    std::vector<double> w(static_cast<std::size_t>(dim_));
    for (std::size_t k = 0; k < basis.size(); ++k) w[k] = dot(v, basis[k]);
    double norm = std::sqrt(dot(w, w));
    for (auto& x : w) x /= norm;
    out.push_back(std::move(w));
  }
  return floating(dim_, std::move(out), tolerance);
}

SphericalCode SphericalCode::relabeled(const std::vector<std::size_t>& permutation,
                                       const std::vector<int>& signs) const {
  if (permutation.size() != length_ || signs.size() != length_) {
    throw Error("relabeling must cover every coordinate");
  }
  if (mode_ == CodeMode::Exact) {
    auto pts = exact_;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t k = 0; k < length_; ++k) {
        pts[i][k] = exact_[i][permutation[k]] * signs[k];
      }
    }
    return exact(dim_, std::move(pts));
  }
  auto pts = float_;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = 0; k < length_; ++k) pts[i][k] = float_[i][permutation[k]] * signs[k];
  }
  return floating(dim_, std::move(pts), tolerance_);
}

BinningError::BinningError(double a, double b)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "ambiguous cosine binning: values " << a << " and " << b
           << " are within tolerance of a common bin boundary";
        return os.str();
      }()),
      a_(a),
      b_(b) {}

CosineTable::CosineTable(const SphericalCode& code) : n_(code.size()) {
  idx_.assign(n_ * n_, 0);
  if (code.mode() == CodeMode::Exact) {
    std::map<Rational, std::uint32_t> ids;
    std::vector<Rational> pair_values(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        Rational c = i == j ? Rational(1) : code.cosine(i, j);
        pair_values[i * n_ + j] = c;
        ids.emplace(c, 0);
      }
    }
    std::uint32_t next = 0;
    for (auto& [value, id] : ids) {
      id = next++;
      values_.push_back(value);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        std::uint32_t id = ids.at(pair_values[i * n_ + j]);
        idx_[i * n_ + j] = id;
        idx_[j * n_ + i] = id;
      }
    }
    return;
  }

  const double tol = code.tolerance();
  std::vector<double> raw(n_ * n_, 1.0);
  std::vector<double> sorted{1.0};
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      double c = code.cosine_approx(i, j);
      raw[i * n_ + j] = raw[j * n_ + i] = c;
      sorted.push_back(c);
    }
  }
  std::sort(sorted.begin(), sorted.end());
  struct Bin {
    double lo, hi;
  };
  std::vector<Bin> bins;
  for (double v : sorted) {
    if (!bins.empty() && v - bins.back().hi <= tol) {
      bins.back().hi = v;
      if (bins.back().hi - bins.back().lo > tol) throw BinningError(bins.back().lo, bins.back().hi);
    } else {
      bins.push_back({v, v});
    }
  }
  const Rational rtol = from_double(tol);
  for (const auto& b : bins) {
    Rational label = simplest_between(from_double(b.lo) - rtol, from_double(b.hi) + rtol);
    if (!values_.empty() && label <= values_.back()) throw BinningError(to_double(values_.back()), b.lo);
    values_.push_back(label);
  }
  // The diagonal bin must be exactly 1.
  if (values_.back() != 1) throw BinningError(bins.back().lo, 1.0);
  std::vector<double> bin_lo;
  for (const auto& b : bins) bin_lo.push_back(b.lo);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      double v = i == j ? 1.0 : raw[i * n_ + j];
      auto it = std::upper_bound(bin_lo.begin(), bin_lo.end(), v);
      idx_[i * n_ + j] = static_cast<std::uint32_t>((it - bin_lo.begin()) - 1);
    }
  }
}

Rational DistanceDistribution::at(const Rational& t) const {
  auto it = entries.find(t);
  return it == entries.end() ? Rational(0) : it->second;
}

DistanceDistribution distance_distribution(const CosineTable& table) {
  const std::size_t n = table.size();
  std::vector<std::uint64_t> counts(table.values().size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ++counts[table.index(i, j)];
  }
  DistanceDistribution out;
  out.N = n;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    Rational a{Integer(static_cast<unsigned long>(counts[k])), Integer(static_cast<unsigned long>(n))};
    a.canonicalize();
    out.entries.emplace(table.values()[k], a);
  }
  return out;
}

DistanceDistribution distance_distribution(const SphericalCode& code) {
  return distance_distribution(CosineTable(code));
}

std::map<Rational, std::size_t> point_distribution(const CosineTable& table, std::size_t u) {
  std::map<Rational, std::size_t> out;
  for (std::size_t v = 0; v < table.size(); ++v) ++out[table.cosine(u, v)];
  return out;
}

Rational a_sum(const DistanceDistribution& distribution, const IntervalSet& T) {
  Rational sum(0);
  for (const auto& [t, a] : distribution.entries) {
    if (a > 0 && T.contains(t)) sum += a;
  }
  return sum;
}

CodeValidation validate_code(const SphericalCode& code, const Rational& cos_theta) {
  CodeValidation out;
  if (code.size() < 2) return out;
  CosineTable table(code);
  bool first = true;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const Rational& c = table.cosine(i, j);
      if (first || c > out.worst_cosine) {
        out.worst_cosine = c;
        out.worst_pair = std::make_pair(i, j);
        first = false;
      }
    }
  }
  out.valid = out.worst_cosine <= cos_theta;
  return out;
}

Rational cos_of_angle(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s.empty()) throw ParseError("empty angle");
  auto pos = s.find("pi");
  if (pos == std::string::npos) {
    Rational value = parse_rational(s);
    if (value == 0) return Rational(1);
    throw UnsupportedError("angle '" + std::string(text) + "' must be a rational multiple of pi");
  }
  std::string mult = s.substr(0, pos);
  std::string rest = s.substr(pos + 2);
  Rational factor = mult.empty() ? Rational(1) : parse_rational(mult);
  if (!rest.empty()) {
    if (rest.front() != '/') throw ParseError("malformed angle '" + std::string(text) + "'");
    factor /= parse_rational(rest.substr(1));
  }
  if (factor < 0 || factor > 1) throw UnsupportedError("angle must lie in [0, pi]");
  // cos(p/q * pi) is rational only for q in {1, 2, 3}.
  static const std::map<Rational, Rational> table = {
      {Rational(0), Rational(1)},       {ratio(1, 3), ratio(1, 2)}, {ratio(1, 2), Rational(0)},
      {ratio(2, 3), ratio(-1, 2)},      {Rational(1), Rational(-1)}};
  auto it = table.find(factor);
  if (it == table.end()) {
    throw UnsupportedError("cos(" + std::string(text) + ") is irrational; pass an exact cosine instead");
  }
  return it->second;
}

SphericalCode gen_e8_kissing() {
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          std::vector<Rational> v(8, Rational(0));
          v[static_cast<std::size_t>(i)] = si;
          v[static_cast<std::size_t>(j)] = sj;
          pts.push_back(std::move(v));
        }
      }
    }
  }
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    std::vector<Rational> v(8);
    for (unsigned k = 0; k < 8; ++k) v[k] = (mask >> k) & 1u ? ratio(-1, 2) : ratio(1, 2);
    pts.push_back(std::move(v));
  }
  return SphericalCode::exact(8, std::move(pts));
}

SphericalCode gen_24cell() {
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          std::vector<Rational> v(4, Rational(0));
          v[static_cast<std::size_t>(i)] = si;
          v[static_cast<std::size_t>(j)] = sj;
          pts.push_back(std::move(v));
        }
      }
    }
  }
  return SphericalCode::exact(4, std::move(pts));
}

SphericalCode gen_cross_polytope(int n) {
  if (n < 2) throw UnsupportedError("cross polytope needs n >= 2");
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
      v[static_cast<std::size_t>(i)] = s;
      pts.push_back(std::move(v));
    }
  }
  return SphericalCode::exact(n, std::move(pts));
}

SphericalCode gen_simplex(int n) {
  if (n < 2) throw UnsupportedError("simplex needs n >= 2");
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i <= n; ++i) {
    std::vector<Rational> v(static_cast<std::size_t>(n) + 1, Rational(-1));
    v[static_cast<std::size_t>(i)] = n;
    pts.push_back(std::move(v));
  }
  return SphericalCode::exact(n, std::move(pts));
}

SphericalCode generate_code(std::string_view name) {
  auto numeric_suffix = [&](std::string_view prefix) -> int {
    std::string_view rest = name.substr(prefix.size());
    if (rest.empty() || rest.size() > 3 ||
        !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("generator '" + std::string(name) + "' needs a dimension suffix, e.g. " +
                       std::string(prefix) + "4");
    }
    return std::stoi(std::string(rest));
  };
  if (name == "e8") return gen_e8_kissing();
  if (name == "24cell") return gen_24cell();
  if (name.starts_with("cross")) return gen_cross_polytope(numeric_suffix("cross"));
  if (name.starts_with("simplex")) return gen_simplex(numeric_suffix("simplex"));
  throw ParseError("unknown generator '" + std::string(name) + "' (expected e8, 24cell, cross<n>, simplex<n>)");
}

TripleHistogram triple_histogram(const CosineTable& table) {
  const std::size_t n = table.size();
  const std::size_t k = table.values().size();
  TripleHistogram out;
  out.values = table.values();
  auto emit = [&](std::uint64_t key, std::uint64_t count) {
    std::array<std::uint32_t, 3> idx{static_cast<std::uint32_t>(key / (k * k)),
                                     static_cast<std::uint32_t>((key / k) % k),
                                     static_cast<std::uint32_t>(key % k)};
    out.counts.emplace_back(idx, count);
  };
  if (k <= 64) {
    std::vector<std::uint64_t> dense(k * k * k, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t x = table.index(a, b) * k * k;
        for (std::size_t c = 0; c < n; ++c) ++dense[x + table.index(a, c) * k + table.index(b, c)];
      }
    }
    for (std::uint64_t key = 0; key < dense.size(); ++key) {
      if (dense[key] != 0) emit(key, dense[key]);
    }
    return out;
  }
  std::map<std::uint64_t, std::uint64_t> sparse;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t x = static_cast<std::uint64_t>(table.index(a, b)) * k * k;
      for (std::size_t c = 0; c < n; ++c) ++sparse[x + table.index(a, c) * k + table.index(b, c)];
    }
  }
  for (const auto& [key, count] : sparse) emit(key, count);
  return out;
}

}  // namespace spherebound
