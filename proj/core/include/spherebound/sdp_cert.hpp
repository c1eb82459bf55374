#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spherebound/caps.hpp"
#include "spherebound/common.hpp"
#include "spherebound/gegenbauer.hpp"
#include "spherebound/intervals.hpp"
#include "spherebound/poly.hpp"
#include "spherebound/psd.hpp"
#include "spherebound/rational.hpp"
#include "spherebound/triple_poly.hpp"

namespace spherebound {

/// S_k^n for matrix size d+1-k: entry (i, j) is the average over the six
/// permutations of (x, y, z) of
///   x^i y^j ((1-x^2)(1-y^2))^(k/2) G_k^(n-1)((z - xy) / sqrt((1-x^2)(1-y^2))),
/// which is a polynomial because G_k^(n-1) has the parity of k.
struct SMatrix {
  int n = 0;
  int k = 0;
  int d = 0;
  std::vector<std::vector<TriplePoly>> entries;
};

/// Requires n >= 3 and 0 <= k <= d.
SMatrix build_s_matrix(int n, int k, int d);

/// Numeric S_k^n(x, y, z) from the unsymmetrized product; summing it over all
/// ordered triples of a code gives the same matrix as the symmetrized form.
std::vector<std::vector<double>> s_matrix_value(const SMatrix& s, double x, double y, double z);

/// F = sum_k <M_k, S_k^n>.
struct MatrixForm {
  int dim = 0;
  int degree = 0;
  std::vector<RationalMatrix> blocks;
};

/// Throws UnsupportedError on inconsistent block sizes.
TriplePoly assemble_F(const MatrixForm& form);

/// F(x, y, z) = s(x) + s(y) + s(z) for a univariate s.
struct SeparableForm {
  RationalPoly s;
};

/// A certificate for the class F(n, f0, T, g, B, theta). With T empty and
/// g = 0 it is a certificate for the plain three-point bound.
struct Certificate {
  int dim = 0;
  int degree = 0;
  Rational f0;
  Rational cos_theta;
  std::variant<SeparableForm, MatrixForm> form;
  Rational B;
  IntervalSet T;
  RationalPoly g;

  bool separable() const { return std::holds_alternative<SeparableForm>(form); }
  TriplePoly F() const;
  Rational F111() const;
  /// F(x, x, 1).
  RationalPoly diagonal() const;
};

enum class VerdictKind { ExactPass, ExactFail, NumericPass, Unknown };

std::string_view to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  /// Human readable reason or witness.
  std::string detail;
  /// Lower bound of the slack for NumericPass.
  std::optional<double> margin;
  /// Rational witness point for ExactFail, when the check is pointwise.
  std::vector<Rational> witness;

  bool passed() const { return kind == VerdictKind::ExactPass || kind == VerdictKind::NumericPass; }
  /// Exact verdicts either way are rigorous.
  Rigor rigor() const {
    return kind == VerdictKind::ExactPass || kind == VerdictKind::ExactFail ? Rigor::Rigorous : Rigor::Numeric;
  }
};

struct NamedVerdict {
  std::string condition;
  Verdict verdict;
};

struct CertReport {
  std::vector<NamedVerdict> verdicts;

  bool passed() const;
  /// Rigorous iff every verdict is ExactPass.
  bool rigorous() const;
  Rigor rigor() const { return rigorous() ? Rigor::Rigorous : Rigor::Numeric; }
  /// First failing condition, for error messages.
  std::optional<NamedVerdict> first_failure() const;
};

/// Membership in BV(n, f0): every M_k PSD and M_0 - f0 E_0 PSD.
/// Separable forms are checked through their Gegenbauer expansion
/// s = sum c_k G_k^(n): blocks [3 c_k] and f0 <= 3 c_0.
CertReport check_bv(const Certificate& cert);

/// F(x, x, 1) <= B + 2 g_T(x) on [-1, cos theta], exactly.
Verdict check_condition2(const Certificate& cert);

struct GridOptions {
  int initial = 8;
  int max_depth = 7;
  long max_cells = 2'000'000;
};

/// F(x, y, z) <= g_T(x) + g_T(y) + g_T(z) on D(theta). Separable forms
/// reduce exactly to s <= g_T on [-1, cos theta]; otherwise an adaptive grid
/// with Lipschitz margins.
Verdict check_condition3(const Certificate& cert, const GridOptions& options = {});

/// All conditions: BV items, then the two pointwise conditions.
CertReport verify(const Certificate& cert);

/// Result of one of the integer bounds on N.
struct NBound {
  /// Largest admissible N (0 if none).
  Integer max_n;
  Rigor rigor = Rigor::Rigorous;
  std::string method;
};

/// Largest integer N >= 0 with a N^2 - b N - c <= 0 (a > 0), exactly.
Integer max_n_quadratic(const Rational& a, const Rational& b, const Rational& c);

/// The LP bound floor(f(1) / f_0). Checks f_0 > 0, every f_k >= 0 and
/// f <= 0 on [-1, cos theta]; throws PremiseError naming the failed one.
NBound lp_bound(const GegExpansion& f, const Rational& cos_theta);

/// Largest N with f0 N^2 - 3 B N - (F(1,1,1) - 3 B) <= 0.
NBound three_point_bound(const Rational& F111, const Rational& f0, const Rational& B);

/// Largest N with f0 N^2 - 3 (B + h) N - (F(1,1,1) - 3 B) <= 0 where
/// h = max(hath, 0): an isolated code point contributes nothing.
NBound restricted_bound(const Rational& F111, const Rational& f0, const Rational& B, const Rational& hath,
                 Rigor hath_rigor);

/// The certificate must verify; throws PremiseError otherwise.
void require_verified(const Certificate& cert, const CertReport& report);

/// hat h for the certificate's g and T. T empty gives 0.
HatH certificate_hath(const Certificate& cert, std::optional<int> mu, const SearchOptions& options = {});

}  // namespace spherebound
