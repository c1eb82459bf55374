#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spherebound/codes.hpp"
#include "spherebound/sdp_cert.hpp"

namespace spherebound {

enum class Direction { Upper, Lower };

struct DistributionBoundResult {
  IntervalSet T;
  Direction direction = Direction::Upper;
  long N = 0;
  /// The certified constant a > 0 of the premise.
  Rational a;
  /// Q for upper bounds, R for lower bounds.
  Rational raw;
  /// (2/N) floor(Q) or (2/N) ceil(R); rounded * N / 2 is an integer.
  Rational rounded;
  Rigor rigor = Rigor::Rigorous;

  /// Upper bound on a single point with Q < 1, i.e. A_t = 0.
  bool forces_zero() const;
};

/// A(T) <= (2/N) floor(Q), Q = (F(1,1,1) + 3(N-1)B - f0 N^2) / (6a), for a
/// certificate of the class with the certificate's T. The premise g <= -a
/// on T is certified with max_on_interval; when a is omitted the largest
/// certified a is used. Throws PremiseError if the certificate fails or the
/// premise does not hold.
DistributionBoundResult distribution_upper(const Certificate& cert, long N, std::optional<Rational> a = std::nullopt);

/// A(T) >= (2/N) ceil(R), R = (f0 N^2 - F(1,1,1) - 3(N-1)B) / (6a), with
/// the premise g <= a on T (a > 0). A missing a is taken as the certified max
/// of g on T.
///
/// `support`, when given, must contain every t in T with A_t > 0 (as shown
/// by an earlier zero-pattern step); the premise is then only needed on
/// T intersected with the support.
DistributionBoundResult distribution_lower(const Certificate& cert, long N, std::optional<Rational> a = std::nullopt,
                                         const std::optional<IntervalSet>& support = std::nullopt);

/// The polynomials of the E8 uniqueness argument:
///   g0 = (2t-1) t^2 (2t+1)^2 (t+1)
///   g1 = (2t-1+a) t^2 (2t+1)^2 (t+1)
///   g2 = (2t-1) (t^2-a^2) (2t+1)^2 (t+1)
///   g3 = (2t-1) t^2 ((2t+1)^2-a^2) (t+1)
///   g4 = (2t-1) t^2 (2t+1)^2 (t+1-a)
RationalPoly e8_poly(int i, const Rational& a = 0);

/// The window T_i around the i-th root of g0 (i = 1..4).
IntervalSet e8_window(int i, const Rational& a);

/// Separable certificate for g_i on T_i (i = 0 uses T empty).
Certificate e8_certificate(int i, const Rational& a);

struct PipelineStep {
  std::string name;
  std::string detail;
  Rigor rigor = Rigor::Rigorous;
};

struct E8UniquenessReport {
  std::vector<PipelineStep> steps;
  std::array<IntervalSet, 4> T;
  std::array<Rational, 4> R;
  /// Lower bounds for A(T_i).
  std::array<Rational, 4> P;
  /// The forced distribution {A_t}.
  DistanceDistribution distribution;
  Rigor rigor = Rigor::Rigorous;
};

/// Proves that a (240, 8, pi/3) code has the E8 distance distribution.
/// Each failed check throws PremiseError naming the step.
E8UniquenessReport e8_uniqueness_pipeline(const std::array<Rational, 4>& a);

}  // namespace spherebound
