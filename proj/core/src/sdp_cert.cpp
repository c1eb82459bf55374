#include "spherebound/sdp_cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spherebound/roots.hpp"

namespace spherebound {

SMatrix build_s_matrix(int n, int k, int d) {
  if (n < 3) throw UnsupportedError("S_k^n needs n >= 3");
  if (k < 0 || k > d) throw UnsupportedError("S_k^n needs 0 <= k <= d");
  const TriplePoly x = TriplePoly::variable(0);
  const TriplePoly y = TriplePoly::variable(1);
  const TriplePoly z = TriplePoly::variable(2);
  const TriplePoly one = TriplePoly::constant(1);
  const TriplePoly u = z - x * y;
  const TriplePoly P = (one - x * x) * (one - y * y);

  const RationalPoly G = gegenbauer_poly(n - 1, k);
  TriplePoly core;
  for (int l = 0; l <= G.degree(); ++l) {
    if (G.coeff(l) == 0) continue;
    core += G.coeff(l) * u.pow(static_cast<unsigned>(l)) * P.pow(static_cast<unsigned>((k - l) / 2));
  }

  SMatrix s{n, k, d, {}};
  const int size = d + 1 - k;
  s.entries.assign(static_cast<std::size_t>(size), std::vector<TriplePoly>(static_cast<std::size_t>(size)));
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      TriplePoly e = (TriplePoly::monomial(1, {i, j, 0}) * core).symmetrized();
      s.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
      s.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = e;
    }
  }
  return s;
}

std::vector<std::vector<double>> s_matrix_value(const SMatrix& s, double x, double y, double z) {
  std::vector<std::vector<double>> out(s.entries.size(), std::vector<double>(s.entries.size()));
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    for (std::size_t j = 0; j < s.entries.size(); ++j) out[i][j] = s.entries[i][j](x, y, z);
  }
  return out;
}

TriplePoly assemble_F(const MatrixForm& form) {
  if (form.degree < 0 || form.blocks.size() != static_cast<std::size_t>(form.degree + 1)) {
    throw UnsupportedError("matrix form needs degree + 1 blocks M_0..M_d");
  }
  TriplePoly F;
  for (int k = 0; k <= form.degree; ++k) {
    const auto& M = form.blocks[static_cast<std::size_t>(k)];
    const std::size_t size = static_cast<std::size_t>(form.degree + 1 - k);
    if (M.size() != size || !is_square(M)) {
      std::ostringstream msg;
      msg << "M_" << k << " must be " << size << "x" << size;
      throw UnsupportedError(msg.str());
    }
    bool zero = true;
    for (const auto& row : M) {
      for (const auto& v : row) zero = zero && v == 0;
    }
    if (zero) continue;
    SMatrix s = build_s_matrix(form.dim, k, form.degree);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (M[i][j] != 0) F += M[i][j] * s.entries[i][j];
      }
    }
  }
  return F;
}

TriplePoly Certificate::F() const {
  if (const auto* s = std::get_if<SeparableForm>(&form)) return TriplePoly::separable(s->s);
  return assemble_F(std::get<MatrixForm>(form));
}

Rational Certificate::F111() const {
  if (const auto* s = std::get_if<SeparableForm>(&form)) return 3 * s->s(Rational(1));
  return F()(Rational(1), Rational(1), Rational(1));
}

RationalPoly Certificate::diagonal() const {
  if (const auto* s = std::get_if<SeparableForm>(&form)) {
    return 2 * s->s + RationalPoly::constant(s->s(Rational(1)));
  }
  return F().diagonal();
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::ExactPass: return "exact-pass";
    case VerdictKind::ExactFail: return "exact-fail";
    case VerdictKind::NumericPass: return "numeric-pass";
    case VerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

bool CertReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.verdict.passed(); });
}

bool CertReport::rigorous() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const auto& v) { return v.verdict.kind == VerdictKind::ExactPass; });
}

std::optional<NamedVerdict> CertReport::first_failure() const {
  for (const auto& v : verdicts) {
    if (!v.verdict.passed()) return v;
  }
  return std::nullopt;
}

namespace {

Verdict pass(std::string detail = {}) { return {VerdictKind::ExactPass, std::move(detail), std::nullopt, {}}; }

Verdict fail(std::string detail, std::vector<Rational> witness = {}) {
  return {VerdictKind::ExactFail, std::move(detail), std::nullopt, std::move(witness)};
}

std::string vector_string(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// A point of [lo, hi] where p < 0, or nullopt when p >= 0 there.
std::optional<Rational> negative_point(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  SignVerdict v = sign_on_interval(p, lo, hi);
  if (is_nonnegative(v)) return std::nullopt;
  if (v.negative_witness) return v.negative_witness;
  // NonPositive and nonzero: among deg + 1 distinct points one is nonzero.
  const int count = std::max(p.degree(), 0) + 2;
  for (int i = 0; i <= count; ++i) {
    Rational x = lo + (hi - lo) * ratio(i, count);
    if (p(x) < 0) return x;
  }
  return lo;
}

}  // namespace

CertReport check_bv(const Certificate& cert) {
  CertReport report;
  if (cert.f0 <= 0) {
    report.verdicts.push_back({"M_k PSD", fail("f0 must be positive")});
    report.verdicts.push_back({"M_0 - f0 E_0 PSD", fail("f0 must be positive")});
    return report;
  }
  if (const auto* s = std::get_if<SeparableForm>(&cert.form)) {
    if (s->s.is_zero()) {
      report.verdicts.push_back({"M_k PSD", pass("zero polynomial")});
      report.verdicts.push_back({"M_0 - f0 E_0 PSD", fail("F = 0 cannot dominate f0 E_0")});
      return report;
    }
    GegExpansion e = expand(s->s, cert.dim);
    Verdict psd = pass("Gegenbauer coefficients of s are nonnegative");
    for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
      if (e.coeffs[k] < 0) {
        psd = fail("c_" + std::to_string(k) + " = " + to_string(e.coeffs[k]) + " < 0");
        break;
      }
    }
    report.verdicts.push_back({"M_k PSD", psd});
    Rational slack = 3 * e.coeffs[0] - cert.f0;
    report.verdicts.push_back({"M_0 - f0 E_0 PSD",
                               slack >= 0 ? pass("3 c_0 - f0 = " + to_string(slack))
                                          : fail("3 c_0 - f0 = " + to_string(slack) + " < 0", {Rational(1)})});
    return report;
  }

  const auto& form = std::get<MatrixForm>(cert.form);
  Verdict psd = pass("all blocks PSD");
  for (std::size_t k = 0; k < form.blocks.size(); ++k) {
    PsdResult r = check_psd(form.blocks[k]);
    if (!r.psd) {
      psd = fail("M_" + std::to_string(k) + " is not PSD, v = " + vector_string(*r.witness), *r.witness);
      break;
    }
  }
  report.verdicts.push_back({"M_k PSD", psd});
  RationalMatrix shifted = form.blocks.at(0);
  shifted[0][0] -= cert.f0;
  PsdResult r = check_psd(shifted);
  report.verdicts.push_back(
      {"M_0 - f0 E_0 PSD",
       r.psd ? pass() : fail("negative direction v = " + vector_string(*r.witness), *r.witness)});
  return report;
}

Verdict check_condition2(const Certificate& cert) {
  const Rational lo = -1;
  const Rational& hi = cert.cos_theta;
  const RationalPoly D = cert.diagonal();
  const RationalPoly off = RationalPoly::constant(cert.B) - D;
  const RationalPoly on = off + 2 * cert.g;
  for (const auto& piece : cert.T.intersect(lo, hi)) {
    if (auto x = negative_point(on, piece.lo, piece.hi)) {
      return fail("B + 2 g(x) - F(x,x,1) = " + to_string(on(*x)) + " at x = " + to_string(*x), {*x});
    }
  }
  for (const auto& piece : cert.T.complement_within(lo, hi)) {
    if (auto x = negative_point(off, piece.lo, piece.hi)) {
      return fail("B - F(x,x,1) = " + to_string(off(*x)) + " at x = " + to_string(*x), {*x});
    }
  }
  return pass();
}

namespace {

struct Box {
  std::array<double, 3> lo;
  std::array<double, 3> hi;
};

struct Range {
  double lo, hi;
};

Range mul(Range a, Range b) {
  double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Range square(Range a) {
  double l = a.lo * a.lo, h = a.hi * a.hi;
  if (a.lo <= 0 && a.hi >= 0) return {0, std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}

// Upper bound of 1 + 2xyz - x^2 - y^2 - z^2 over the box.
double domain_upper(const Box& b) {
  Range x{b.lo[0], b.hi[0]}, y{b.lo[1], b.hi[1]}, z{b.lo[2], b.hi[2]};
  Range xyz = mul(mul(x, y), z);
  return 1 + 2 * xyz.hi - square(x).lo - square(y).lo - square(z).lo + 1e-12;
}

bool in_domain(const Rational& x, const Rational& y, const Rational& z) {
  return 1 + 2 * x * y * z - x * x - y * y - z * z >= 0;
}

class DomainChecker {
 public:
  DomainChecker(const Certificate& cert, const GridOptions& options, std::vector<Rational> seeds = {})
      : cert_(cert), options_(options), F_(cert.F()), grad_(F_.gradient_bound()), extra_(std::move(seeds)) {
    c_ = to_double(cert.cos_theta);
    if (!cert.g.is_zero()) {
      auto b = bound_on(cert.g.derivative(), Rational(-1), cert.cos_theta);
      lg_ = std::max(to_double(abs(b.lo)), to_double(abs(b.hi))) * (1 + 1e-12) + 1e-300;
    }
    for (const auto& p : cert.T.parts()) parts_.push_back({to_double(p.lo), to_double(p.hi)});
  }

  Rational phi(const Rational& x, const Rational& y, const Rational& z) const {
    return g_restricted(cert_.g, cert_.T, x) + g_restricted(cert_.g, cert_.T, y) +
           g_restricted(cert_.g, cert_.T, z) - F_(x, y, z);
  }

  Verdict run() {
    // Exact seeds first: cheap and give readable witnesses.
    std::vector<Rational> seeds{0, -1, Rational(-1, 2), cert_.cos_theta};
    seeds.insert(seeds.end(), extra_.begin(), extra_.end());
    for (const auto& a : seeds) {
      for (const auto& b : seeds) {
        for (const auto& c : seeds) {
          if (!within(a) || !within(b) || !within(c) || !in_domain(a, b, c)) continue;
          if (phi(a, b, c) < 0) return witness(a, b, c);
        }
      }
    }
    const int m = options_.initial;
    const double w = (c_ + 1) / m;
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        for (int k = j; k < m; ++k) {
          Box box{{-1 + i * w, -1 + j * w, -1 + k * w}, {-1 + (i + 1) * w, -1 + (j + 1) * w, -1 + (k + 1) * w}};
          for (int a = 0; a < 3; ++a) box.hi[static_cast<std::size_t>(a)] = std::min(box.hi[static_cast<std::size_t>(a)], c_);
          if (auto v = visit(box, 0)) return *v;
        }
      }
    }
    if (unresolved_ > 0) {
      Verdict v;
      v.kind = VerdictKind::Unknown;
      v.detail = std::to_string(unresolved_) + " grid cells unresolved at the depth limit";
      return v;
    }
    Verdict v;
    v.kind = VerdictKind::NumericPass;
    v.margin = margin_;
    std::ostringstream msg;
    msg << "grid of " << cells_ << " cells, certified slack >= " << margin_;
    v.detail = msg.str();
    return v;
  }

 private:
  bool within(const Rational& t) const { return t >= -1 && t <= cert_.cos_theta; }

  Verdict witness(const Rational& x, const Rational& y, const Rational& z) const {
    return fail("g_T sum - F = " + to_string(phi(x, y, z)) + " at " + vector_string({x, y, z}), {x, y, z});
  }

  // Lower bound of g_T over [a, b].
  double gt_lower(double a, double b) const {
    double mid = 0.5 * (a + b);
    double gmin = cert_.g(mid) - lg_ * 0.5 * (b - a);
    gmin -= 1e-12 * (1 + std::abs(gmin));
    bool inside = false, touches = false;
    for (const auto& p : parts_) {
      if (a >= p.lo + 1e-15 && b <= p.hi - 1e-15) inside = true;
      if (b >= p.lo - 1e-15 && a <= p.hi + 1e-15) touches = true;
    }
    if (inside) return gmin;
    if (!touches) return 0.0;
    return std::min(0.0, gmin);
  }

  std::optional<Verdict> visit(const Box& box, int depth) {
    if (++cells_ > options_.max_cells) {
      ++unresolved_;
      return std::nullopt;
    }
    if (domain_upper(box) < 0) return std::nullopt;
    std::array<double, 3> mid, hw;
    for (std::size_t a = 0; a < 3; ++a) {
      mid[a] = 0.5 * (box.lo[a] + box.hi[a]);
      hw[a] = 0.5 * (box.hi[a] - box.lo[a]);
    }
    double fmid = F_(mid[0], mid[1], mid[2]);
    double fup = fmid + grad_[0] * hw[0] + grad_[1] * hw[1] + grad_[2] * hw[2];
    fup += 1e-12 * (1 + std::abs(fmid));
    double lower = gt_lower(box.lo[0], box.hi[0]) + gt_lower(box.lo[1], box.hi[1]) +
                   gt_lower(box.lo[2], box.hi[2]) - fup;
    if (lower >= 0) {
      margin_ = std::min(margin_, lower);
      return std::nullopt;
    }
    Rational x = from_double(mid[0]), y = from_double(mid[1]), z = from_double(mid[2]);
    if (in_domain(x, y, z) && phi(x, y, z) < 0) return witness(x, y, z);
    if (depth >= options_.max_depth) {
      ++unresolved_;
      return std::nullopt;
    }
    for (int child = 0; child < 8; ++child) {
      Box sub;
      for (std::size_t a = 0; a < 3; ++a) {
        bool upper = (child >> a) & 1;
        sub.lo[a] = upper ? mid[a] : box.lo[a];
        sub.hi[a] = upper ? box.hi[a] : mid[a];
      }
      if (auto v = visit(sub, depth + 1)) return v;
      if (unresolved_ > 0 && cells_ > options_.max_cells) return std::nullopt;
    }
    return std::nullopt;
  }

  const Certificate& cert_;
  GridOptions options_;
  TriplePoly F_;
  std::array<double, 3> grad_;
  double c_ = 0;
  double lg_ = 0;
  std::vector<Range> parts_;
  double margin_ = std::numeric_limits<double>::infinity();
  long cells_ = 0;
  long unresolved_ = 0;
  std::vector<Rational> extra_;
};

}  // namespace

Verdict check_condition3(const Certificate& cert, const GridOptions& options) {
  if (const auto* s = std::get_if<SeparableForm>(&cert.form)) {
    // Sufficient: s(t) <= g_T(t) for every t in [-1, cos theta].
    // Failing points seed the witness search: (t, t, t) lies in D for t >= -1/2.
    std::vector<Rational> bad;
    for (const auto& piece : cert.T.intersect(Rational(-1), cert.cos_theta)) {
      if (auto t = negative_point(cert.g - s->s, piece.lo, piece.hi)) bad.push_back(*t);
    }
    for (const auto& piece : cert.T.complement_within(Rational(-1), cert.cos_theta)) {
      auto t = negative_point(-s->s, piece.lo, piece.hi);
      if (!t) continue;
      bad.push_back(*t);
      // The piece is closed, so t may sit on the boundary of T; step inside.
      const Rational step = (piece.lo + piece.hi) / 2 - *t;
      Rational scale(1, 2);
      for (int j = 0; j < 64; ++j, scale /= 2) {
        Rational u = *t + step * scale;
        if (!cert.T.contains(u) && s->s(u) > 0) {
          bad.push_back(u);
          break;
        }
      }
    }
    if (bad.empty()) return pass("s <= g_T on [-1, cos theta]");
    return DomainChecker(cert, options, std::move(bad)).run();
  }
  return DomainChecker(cert, options).run();
}

CertReport verify(const Certificate& cert) {
  if (cert.cos_theta < -1 || cert.cos_theta >= 1) throw UnsupportedError("cos theta must lie in [-1, 1)");
  if (!cert.T.empty()) require_restriction_set(cert.T);
  CertReport report = check_bv(cert);
  report.verdicts.push_back({"F(x,x,1) <= B + 2 g_T(x) on [-1, cos theta]", check_condition2(cert)});
  report.verdicts.push_back({"F <= g_T(x) + g_T(y) + g_T(z) on D(theta)", check_condition3(cert)});
  return report;
}

void require_verified(const Certificate& cert, const CertReport& report) {
  (void)cert;
  if (auto f = report.first_failure()) {
    throw PremiseError(f->condition, std::string(to_string(f->verdict.kind)) + ": " + f->verdict.detail);
  }
}

Integer max_n_quadratic(const Rational& a, const Rational& b, const Rational& c) {
  if (a <= 0) throw UnsupportedError("quadratic bound needs a positive leading coefficient");
  auto q = [&](const Integer& n) -> Rational { return a * n * n - b * n - c; };
  Rational disc = b * b + 4 * a * c;
  if (disc < 0) return 0;
  double r = (to_double(b) + std::sqrt(std::max(0.0, to_double(disc)))) / (2 * to_double(a));
  Integer n = r > 0 ? floor(from_double(std::floor(r))) : Integer(0);
  while (q(n + 1) <= 0) ++n;
  while (n > 0 && q(n) > 0) --n;
  return n;
}

NBound lp_bound(const GegExpansion& f, const Rational& cos_theta) {
  if (f.coeffs.empty() || f.coeffs[0] <= 0) throw PremiseError("f_0 > 0", "the constant coefficient is not positive");
  for (std::size_t k = 1; k < f.coeffs.size(); ++k) {
    if (f.coeffs[k] < 0) {
      throw PremiseError("f_k >= 0", "f_" + std::to_string(k) + " = " + to_string(f.coeffs[k]));
    }
  }
  RationalPoly p = f.reconstruct();
  if (auto x = negative_point(-p, Rational(-1), cos_theta)) {
    throw PremiseError("f(x) <= 0 on [-1, cos theta]", "f(" + to_string(*x) + ") = " + to_string(p(*x)));
  }
  return {floor(f.value_at_one() / f.coeffs[0]), Rigor::Rigorous, "LP bound f(1)/f_0"};
}

NBound three_point_bound(const Rational& F111, const Rational& f0, const Rational& B) {
  if (f0 <= 0) throw PremiseError("f0 > 0", "f0 = " + to_string(f0));
  return {max_n_quadratic(f0, 3 * B, F111 - 3 * B), Rigor::Rigorous, "three-point bound"};
}

NBound restricted_bound(const Rational& F111, const Rational& f0, const Rational& B, const Rational& hath,
                 Rigor hath_rigor) {
  if (f0 <= 0) throw PremiseError("f0 > 0", "f0 = " + to_string(f0));
  Rational h = hath > 0 ? hath : Rational(0);
  return {max_n_quadratic(f0, 3 * (B + h), F111 - 3 * B), hath_rigor, "restricted three-point bound"};
}

HatH certificate_hath(const Certificate& cert, std::optional<int> mu, const SearchOptions& options) {
  if (cert.T.empty()) {
    HatH h;
    h.value = 0;
    return h;
  }
  CapProfile profile{cert.dim, cert.cos_theta, cert.T, cert.g, std::nullopt};
  if (mu) {
    profile.mu = MuBound{*mu, MuProvenance::UserSupplied};
  } else {
    profile.mu = mu_for_interval(cert.dim, cert.cos_theta, cert.T);
  }
  return hat_h(profile, options);
}

}  // namespace spherebound
