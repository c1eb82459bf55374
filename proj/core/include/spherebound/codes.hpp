#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spherebound/common.hpp"
#include "spherebound/intervals.hpp"
#include "spherebound/rational.hpp"

namespace spherebound {

enum class CodeMode { Exact, Float };

inline constexpr double kDefaultCosineTolerance = 1e-9;

/// A finite point set on S^(n-1).
///
/// Exact codes store rational coordinate vectors that share one squared norm
/// (the points are those vectors scaled to the unit sphere), so every
/// pairwise cosine is rational. Coordinate vectors may be longer than the
/// sphere dimension as long as they span at most `dim` dimensions. Float
/// codes store unit vectors and a tolerance used for norm checks and binning.
class SphericalCode {
 public:
  static SphericalCode exact(int dim, std::vector<std::vector<Rational>> points);
  static SphericalCode floating(int dim, std::vector<std::vector<double>> points,
                                double tolerance = kDefaultCosineTolerance);

  int dim() const { return dim_; }
  std::size_t size() const { return mode_ == CodeMode::Exact ? exact_.size() : float_.size(); }
  CodeMode mode() const { return mode_; }
  double tolerance() const { return tolerance_; }
  std::size_t coordinate_length() const { return length_; }

  /// Shared squared norm of the exact coordinate vectors.
  const Rational& norm2() const { return norm2_; }
  const std::vector<std::vector<Rational>>& exact_points() const { return exact_; }
  const std::vector<std::vector<double>>& float_points() const { return float_; }

  /// Exact mode only.
  Rational cosine(std::size_t i, std::size_t j) const;
  double cosine_approx(std::size_t i, std::size_t j) const;

  /// Unit float vectors of the same code.
  SphericalCode to_float(double tolerance = kDefaultCosineTolerance) const;

  /// Same code with coordinates permuted and sign-flipped (an orthogonal map).
  SphericalCode relabeled(const std::vector<std::size_t>& permutation, const std::vector<int>& signs) const;

 private:
  SphericalCode() = default;

  int dim_ = 0;
  CodeMode mode_ = CodeMode::Exact;
  double tolerance_ = kDefaultCosineTolerance;
  std::size_t length_ = 0;
  Rational norm2_;
  std::vector<std::vector<Rational>> exact_;
  std::vector<std::vector<double>> float_;
};

/// Raised when float cosines cannot be binned unambiguously.
class BinningError : public Error {
 public:
  BinningError(double a, double b);
  double first() const { return a_; }
  double second() const { return b_; }

 private:
  double a_;
  double b_;
};

/// All pairwise cosines of a code as indices into a sorted list of distinct
/// exact values. Float codes are binned: values within the tolerance of each
/// other share a bin whose exact label is the simplest rational within the
/// tolerance of the bin.
class CosineTable {
 public:
  explicit CosineTable(const SphericalCode& code);

  std::size_t size() const { return n_; }
  const std::vector<Rational>& values() const { return values_; }
  std::uint32_t index(std::size_t i, std::size_t j) const { return idx_[i * n_ + j]; }
  const Rational& cosine(std::size_t i, std::size_t j) const { return values_[index(i, j)]; }
  /// Index of the exact value 1 (the diagonal).
  std::uint32_t one_index() const { return index(0, 0); }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> values_;
  std::vector<std::uint32_t> idx_;
};

/// {A_t}: the average number of code points at cosine t from a code point.
struct DistanceDistribution {
  std::size_t N = 0;
  /// Only t with A_t > 0 are stored.
  std::map<Rational, Rational> entries;

  Rational at(const Rational& t) const;
  bool operator==(const DistanceDistribution&) const = default;
};

DistanceDistribution distance_distribution(const CosineTable& table);
DistanceDistribution distance_distribution(const SphericalCode& code);

/// A_t(u) for a single point u: counts of points at each cosine from u.
std::map<Rational, std::size_t> point_distribution(const CosineTable& table, std::size_t u);

/// A(T): sum of A_t over t in T with A_t > 0.
Rational a_sum(const DistanceDistribution& distribution, const IntervalSet& T);

struct CodeValidation {
  bool valid = true;
  /// Pair with the largest off-diagonal cosine.
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  Rational worst_cosine;
};

/// Valid iff every off-diagonal cosine is at most cos_theta.
CodeValidation validate_code(const SphericalCode& code, const Rational& cos_theta);

/// Exact cosine of an angle written as a rational multiple of pi ("pi/3",
/// "2pi/3", "2*pi/3", "pi", "0"). Only angles with rational cosine are
/// accepted; others raise UnsupportedError.
Rational cos_of_angle(std::string_view text);

/// The 240 minimal vectors of E8 (squared norm 2): (+-1,+-1,0^6) and
/// (+-1/2)^8 with an even number of minus signs.
SphericalCode gen_e8_kissing();
/// The 24 minimal vectors of D4, i.e. the vertices of the 24-cell.
SphericalCode gen_24cell();
/// The 2n points +-e_i.
SphericalCode gen_cross_polytope(int n);
/// The n+1 vertices of the regular simplex, embedded in R^(n+1).
SphericalCode gen_simplex(int n);

/// Generator lookup by name: e8, 24cell, cross<n>, simplex<n>.
SphericalCode generate_code(std::string_view name);

/// Counts of ordered triples (c, c', c'') by their cosine triple
/// (c.c', c.c'', c'.c'').
struct TripleHistogram {
  std::vector<Rational> values;
  std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint64_t>> counts;
};

TripleHistogram triple_histogram(const CosineTable& table);

/// File format: a header "dim N mode" (mode is "exact" or "float") then one
/// point per line; exact coordinates are rationals "p/q", float coordinates
/// are decimals. Blank lines and lines starting with '#' are ignored.
SphericalCode read_code(std::istream& in);
SphericalCode read_code_file(const std::string& path);
void write_code(std::ostream& out, const SphericalCode& code);

}  // namespace spherebound
