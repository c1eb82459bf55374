#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spherebound/common.hpp"
#include "spherebound/intervals.hpp"
#include "spherebound/poly.hpp"
#include "spherebound/rational.hpp"

namespace spherebound {

/// g_T(x): g(x) on T and 0 elsewhere.
Rational g_restricted(const RationalPoly& g, const IntervalSet& T, const Rational& x);
double g_restricted(const RationalPoly& g, const IntervalSet& T, double x);

/// A negative quadratic irrational -sqrt(square) kept exact.
struct NegativeRoot {
  Rational square;

  double approx() const;
  /// x < -sqrt(square)
  bool above(const Rational& x) const;
  /// x > -sqrt(square)
  bool below(const Rational& x) const;
};

/// Open range (lo, hi) of right endpoints a for which T = [-1, a] admits at
/// most m points of a theta-code whose cosines with the pole lie in T, and m
/// are attained.
struct TmInterval {
  int m = 0;
  NegativeRoot lo;
  NegativeRoot hi;

  bool contains(const Rational& a) const { return lo.below(a) && hi.above(a); }
};

/// Requires cos_theta >= 0 (theta <= pi/2) and 1 <= m <= n.
TmInterval t_m_interval(int n, const Rational& cos_theta, int m);

enum class MuProvenance { Derived, UserSupplied };

struct MuBound {
  int value = 0;
  MuProvenance provenance = MuProvenance::UserSupplied;
};

/// mu = A(n, theta, T) for T = [-1, a] with a strictly inside some
/// t_m_interval; otherwise throws UnsupportedError asking for a manual bound.
MuBound mu_for_interval(int n, const Rational& cos_theta, const IntervalSet& T);

/// Certified upper bound for h_1 = sup of g over T.
struct H1Result {
  Rational upper;
  Rational argmax_lo;
  Rational argmax_hi;
  bool exact = false;
};

H1Result h_1(const RationalPoly& g, const IntervalSet& T);

enum class Feasibility { Feasible, Infeasible, Undetermined };

/// A bound on h_m for one m.
struct LevelBound {
  int m = 0;
  Feasibility feasibility = Feasibility::Undetermined;
  /// Best feasible value found (a lower estimate of h_m).
  double value = 0.0;
  /// Upper bound for h_m; equals value for heuristic levels.
  Rational upper;
  Rigor rigor = Rigor::Heuristic;
  /// Cosines with the pole at the best configuration found.
  std::vector<double> argmax;
};

struct H2Options {
  int grid = 2000;
  /// Zoom steps of the local refinement around the incumbents.
  int refine_steps = 30;
  int incumbents = 6;
  /// Branch and bound on cell pairs stops once upper - value is below this
  /// (relative to 1 + |value|) or the live pair count exceeds max_pairs.
  double gap = 1e-9;
  std::size_t max_pairs = 1'000'000;
};

/// h_2: max of g(t1) + g(t2) over t1, t2 in T such that two unit vectors with
/// these pole cosines can be theta-separated, i.e.
///   t1 t2 - sqrt((1 - t1^2)(1 - t2^2)) <= cos theta.
/// The value comes from grid incumbents, critical points of g and a search
/// along the boundary of the feasible region. The upper bound covers every
/// cell pair that may contain a feasible pair, with a Lipschitz margin for g,
/// refined by bisection; it is also capped by 2 h_1.
LevelBound h_2(const RationalPoly& g, const IntervalSet& T, const Rational& cos_theta, int n,
               const H2Options& options = {});

struct SearchOptions {
  int restarts = 200;
  int iterations = 400;
  std::uint64_t seed = 0x5eed;
};

/// Unit vectors in R^n; the pole e is the first coordinate axis.
using Configuration = std::vector<std::vector<double>>;

/// Every pole cosine lies in T and every pairwise cosine is <= cos_theta + tol.
bool configuration_feasible(const Configuration& config, double cos_theta, const IntervalSet& T, double tol = 1e-12);

/// Randomized projected-penalty search for an m-point configuration in
/// Q(m, n, theta, T). Returns nullopt when no restart succeeds.
std::optional<Configuration> find_configuration(int n, double cos_theta, const IntervalSet& T, int m,
                                                const SearchOptions& options = {});

/// Multistart local search for h_m with m >= 1 (heuristic lower estimate).
LevelBound h_m_heuristic(const RationalPoly& g, const IntervalSet& T, const Rational& cos_theta, int n, int m,
                         const SearchOptions& options = {});

struct CapProfile {
  int n = 0;
  Rational cos_theta;
  IntervalSet T;
  RationalPoly g;
  std::optional<MuBound> mu;
};

struct HatH {
  /// max over the levels of their upper bounds.
  Rational value;
  Rigor rigor = Rigor::Rigorous;
  std::vector<LevelBound> levels;
};

/// hat h = max{h_1, ..., h_mu}. Levels 1 and 2 are certified; levels m >= 3
/// come from h_m_heuristic and downgrade the rigor. Empty levels contribute
/// nothing, so any upper bound for mu is sound. Throws if mu is missing.
HatH hat_h(const CapProfile& profile, const SearchOptions& options = {});

}  // namespace spherebound
