#include "spherebound/caps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "spherebound/roots.hpp"

namespace spherebound {

Rational g_restricted(const RationalPoly& g, const IntervalSet& T, const Rational& x) {
  return T.contains(x) ? g(x) : Rational(0);
}

double g_restricted(const RationalPoly& g, const IntervalSet& T, double x) { return T.contains(x) ? g(x) : 0.0; }

double NegativeRoot::approx() const { return -std::sqrt(to_double(square)); }

bool NegativeRoot::above(const Rational& x) const { return x < 0 && x * x > square; }

bool NegativeRoot::below(const Rational& x) const { return x >= 0 || x * x < square; }

TmInterval t_m_interval(int n, const Rational& cos_theta, int m) {
  if (cos_theta < 0) throw UnsupportedError("T_m intervals need theta <= pi/2 (cos theta >= 0)");
  if (cos_theta >= 1) throw UnsupportedError("cos theta must be < 1");
  if (m < 1 || m > n) throw UnsupportedError("T_m intervals need 1 <= m <= n");
  TmInterval out;
  out.m = m;
  out.lo.square = (1 + (m - 1) * cos_theta) / m;
  out.hi.square = (1 + m * cos_theta) / (m + 1);
  out.lo.square.canonicalize();
  out.hi.square.canonicalize();
  return out;
}

MuBound mu_for_interval(int n, const Rational& cos_theta, const IntervalSet& T) {
  if (T.parts().size() != 1 || T.parts().front().lo != -1) {
    throw UnsupportedError("mu can only be derived for T = [-1, a]; supply mu_bound manually");
  }
  const Rational& a = T.parts().front().hi;
  for (int m = 1; m <= n; ++m) {
    if (t_m_interval(n, cos_theta, m).contains(a)) return {m, MuProvenance::Derived};
  }
  throw UnsupportedError("a = " + to_string(a) +
                         " is not strictly inside any T_m range; supply mu_bound manually");
}

H1Result h_1(const RationalPoly& g, const IntervalSet& T) {
  if (T.empty()) throw UnsupportedError("h_1 needs a nonempty T");
  std::optional<H1Result> best;
  for (const auto& part : T.parts()) {
    MaxBound b = max_on_interval(g, part.lo, part.hi);
    if (!best || b.bound > best->upper || (b.bound == best->upper && b.exact && !best->exact)) {
      best = H1Result{b.bound, b.location.lo, b.location.hi, b.exact};
    }
  }
  return *best;
}

namespace {

constexpr double kPi = std::numbers::pi;

bool pair_feasible(double t1, double t2, double c) {
  double s = std::max(0.0, (1 - t1 * t1)) * std::max(0.0, (1 - t2 * t2));
  return t1 * t2 - std::sqrt(s) <= c;
}

double lipschitz_bound(const RationalPoly& g, const IntervalSet& T) {
  const Rational lo = T.parts().front().lo;
  const Rational hi = T.parts().back().hi;
  auto b = bound_on(g.derivative(), lo, hi);
  double l = std::max(to_double(abs(b.lo)), to_double(abs(b.hi)));
  return l * (1 + 1e-12) + 1e-300;
}

double project_onto(const IntervalSet& T, double t) {
  double best = t;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& p : T.parts()) {
    double lo = to_double(p.lo), hi = to_double(p.hi);
    double c = std::clamp(t, lo, hi);
    if (std::abs(c - t) < best_dist) {
      best_dist = std::abs(c - t);
      best = c;
    }
  }
  return best;
}

double sample_in(const IntervalSet& T, std::mt19937_64& rng) {
  double total = 0;
  for (const auto& p : T.parts()) total += to_double(p.hi - p.lo);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (total <= 0) {
    std::uniform_int_distribution<std::size_t> pick(0, T.parts().size() - 1);
    return to_double(T.parts()[pick(rng)].lo);
  }
  double r = u(rng) * total;
  for (const auto& p : T.parts()) {
    double len = to_double(p.hi - p.lo);
    if (r <= len) return to_double(p.lo) + r;
    r -= len;
  }
  return to_double(T.parts().back().hi);
}

struct Incumbent {
  double value;
  double t1, t2;
};

}  // namespace

LevelBound h_2(const RationalPoly& g, const IntervalSet& T, const Rational& cos_theta, int n,
               const H2Options& options) {
  if (n < 2) throw UnsupportedError("h_2 needs n >= 2");
  require_restriction_set(T);
  LevelBound out;
  out.m = 2;
  out.rigor = Rigor::Numeric;
  const double c = to_double(cos_theta);
  const double theta = std::acos(std::clamp(c, -1.0, 1.0));
  const double L = lipschitz_bound(g, T);

  struct Cell {
    double mid, hw, gmid, gupper, alo, ahi;
  };
  std::vector<Cell> cells;
  double total = 0;
  for (const auto& p : T.parts()) total += to_double(p.hi - p.lo);
  for (const auto& p : T.parts()) {
    double lo = to_double(p.lo), hi = to_double(p.hi);
    int count = total > 0 ? std::max(1, static_cast<int>(std::lround(options.grid * (hi - lo) / total))) : 1;
    if (hi == lo) count = 1;
    double width = (hi - lo) / count;
    for (int i = 0; i < count; ++i) {
      double a = lo + i * width;
      double b = i + 1 == count ? hi : a + width;
      Cell cell;
      cell.mid = 0.5 * (a + b);
      cell.hw = 0.5 * (b - a);
      cell.gmid = g(cell.mid);
      cell.gupper = cell.gmid + L * cell.hw + 1e-12 * (1 + std::abs(cell.gmid));
      cell.alo = std::acos(std::clamp(b, -1.0, 1.0)) - 1e-12;
      cell.ahi = std::acos(std::clamp(a, -1.0, 1.0)) + 1e-12;
      cells.push_back(cell);
    }
  }

  std::vector<Incumbent> top;
  auto offer = [&](double value, double t1, double t2) {
    if (!T.contains(t1) || !T.contains(t2) || !pair_feasible(t1, t2, c)) return;
    top.push_back({value, t1, t2});
    std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
    if (top.size() > static_cast<std::size_t>(options.incumbents)) top.pop_back();
  };
  auto may_pair = [&](const Cell& a, const Cell& b) {
    return a.ahi + b.ahi >= theta && a.alo + b.alo <= 2 * kPi - theta;
  };
  bool any = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i; j < cells.size(); ++j) {
      const Cell& a = cells[i];
      const Cell& b = cells[j];
      if (!may_pair(a, b)) continue;
      any = true;
      double v = a.gmid + b.gmid;
      if ((top.size() < static_cast<std::size_t>(options.incumbents) || v > top.back().value) &&
          pair_feasible(a.mid, b.mid, c)) {
        offer(v, a.mid, b.mid);
      }
    }
  }
  if (!any) {
    out.feasibility = Feasibility::Infeasible;
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }

  // Exact candidates: pole cosines at part endpoints and critical points of g.
  H1Result h1 = h_1(g, T);
  std::vector<double> special;
  for (const auto& p : T.parts()) {
    special.push_back(to_double(p.lo));
    special.push_back(to_double(p.hi));
    if (g.degree() >= 2 && p.lo < p.hi) {
      for (const auto& r : isolate_roots(g.derivative(), p.lo, p.hi)) special.push_back(to_double((r.lo + r.hi) / 2));
    }
  }
  special.push_back(to_double((h1.argmax_lo + h1.argmax_hi) / 2));
  for (double s1 : special) {
    for (double s2 : special) offer(g(s1) + g(s2), s1, s2);
  }

  // Off the critical points the optimum lies on the boundary
  // phi1 + phi2 = theta or 2 pi - theta of the feasible region.
  auto partner_offer = [&](double phi1) {
    double t1 = std::cos(phi1);
    for (double phi2 : {2 * kPi - theta - phi1, theta - phi1}) {
      if (phi2 < 0 || phi2 > kPi) continue;
      double t2 = std::cos(phi2);
      // Step inside the region by a rounding margin.
      for (double t2s : {t2, t2 + (phi2 + phi1 > kPi ? -1 : 1) * 1e-15}) {
        if (T.contains(t2s) && pair_feasible(t1, t2s, c)) offer(g(t1) + g(t2s), t1, t2s);
      }
    }
  };
  for (const auto& p : T.parts()) {
    double phi_lo = std::acos(std::clamp(to_double(p.hi), -1.0, 1.0));
    double phi_hi = std::acos(std::clamp(to_double(p.lo), -1.0, 1.0));
    const int samples = 4000;
    double step = (phi_hi - phi_lo) / samples;
    double arg = phi_lo, best_here = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
      double phi = phi_lo + step * i;
      double before = top.empty() ? -std::numeric_limits<double>::infinity() : top.front().value;
      partner_offer(phi);
      if (!top.empty() && top.front().value > before && top.front().value > best_here) {
        best_here = top.front().value;
        arg = phi;
      }
    }
    for (int round = 0; round < 12 && step > 0; ++round) {
      double lo = std::max(phi_lo, arg - 2 * step), hi = std::min(phi_hi, arg + 2 * step);
      step = (hi - lo) / 40;
      for (int i = 0; i <= 40; ++i) {
        double phi = lo + step * i;
        double before = top.front().value;
        partner_offer(phi);
        if (top.front().value > before) arg = phi;
      }
    }
  }

  double window = 0;
  for (const auto& cell : cells) window = std::max(window, 2 * cell.hw);
  Incumbent best{-std::numeric_limits<double>::infinity(), 0, 0};
  for (Incumbent inc : top) {
    double w = std::max(window, 1e-9);
    for (int step = 0; step < options.refine_steps; ++step) {
      const int k = 10;
      Incumbent local = inc;
      for (int i = -k; i <= k; ++i) {
        double t1 = project_onto(T, inc.t1 + w * i / k);
        double g1 = g(t1);
        for (int j = -k; j <= k; ++j) {
          double t2 = project_onto(T, inc.t2 + w * j / k);
          double v = g1 + g(t2);
          if (v > local.value && pair_feasible(t1, t2, c)) local = {v, t1, t2};
        }
      }
      inc = local;
      w *= 0.35;
    }
    if (inc.value > best.value) best = inc;
  }

  // 2 h_1 is attained when the maximizer can be doubled: two points at pole
  // cosine t are theta-separable iff 2 t^2 - 1 <= cos theta. A constant g
  // attains it on any feasible pair.
  const Rational cap = 2 * h1.upper;
  const bool doubled = h1.exact && h1.argmax_lo == h1.argmax_hi &&
                       2 * h1.argmax_lo * h1.argmax_lo - 1 <= cos_theta;
  if (doubled || (g.degree() <= 0 && best.value > -std::numeric_limits<double>::infinity())) {
    out.feasibility = Feasibility::Feasible;
    out.upper = cap;
    out.value = doubled ? to_double(cap) : best.value;
    out.argmax = doubled ? std::vector<double>{to_double(h1.argmax_lo), to_double(h1.argmax_lo)}
                         : std::vector<double>{best.t1, best.t2};
    return out;
  }

  // Branch and bound on cell pairs for the upper bound.
  const RationalPoly dg = g.derivative();
  std::vector<double> dcoeffs;
  double dscale = 0;
  for (const auto& coeff : dg.coeffs()) {
    dcoeffs.push_back(to_double(coeff));
    dscale += std::abs(dcoeffs.back());
  }
  // max |g'| on [a, b] by interval Horner, padded for rounding.
  auto local_lipschitz = [&](double a, double b) {
    double lo = 0, hi = 0;
    for (auto it = dcoeffs.rbegin(); it != dcoeffs.rend(); ++it) {
      double c1 = lo * a, c2 = lo * b, c3 = hi * a, c4 = hi * b;
      lo = std::min({c1, c2, c3, c4}) + *it;
      hi = std::max({c1, c2, c3, c4}) + *it;
    }
    return std::min(L, std::max(std::abs(lo), std::abs(hi)) + 1e-12 * (1 + dscale));
  };
  auto make_cell = [&](double a, double b) {
    Cell cell;
    cell.mid = 0.5 * (a + b);
    cell.hw = 0.5 * (b - a);
    cell.gmid = g(cell.mid);
    cell.gupper = cell.gmid + local_lipschitz(a, b) * cell.hw + 1e-12 * (1 + std::abs(cell.gmid));
    cell.alo = std::acos(std::clamp(b, -1.0, 1.0)) - 1e-12;
    cell.ahi = std::acos(std::clamp(a, -1.0, 1.0)) + 1e-12;
    return cell;
  };
  const double base = best.value > -std::numeric_limits<double>::infinity() ? best.value : 0.0;
  const double tol = options.gap * (1 + std::abs(base));
  std::vector<std::pair<Cell, Cell>> live;
  double upper = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Cell& a, const Cell& b, std::vector<std::pair<Cell, Cell>>& into) {
    if (!may_pair(a, b)) return;
    double ub = a.gupper + b.gupper;
    if (pair_feasible(a.mid, b.mid, c) && a.gmid + b.gmid > best.value) {
      best = {a.gmid + b.gmid, a.mid, b.mid};
    }
    if (ub > best.value + tol) into.emplace_back(a, b);
  };
  for (auto& cell : cells) cell = make_cell(cell.mid - cell.hw, cell.mid + cell.hw);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i; j < cells.size(); ++j) consider(cells[i], cells[j], live);
  }
  for (int depth = 0; depth < 60 && !live.empty() && live.size() <= options.max_pairs; ++depth) {
    std::vector<std::pair<Cell, Cell>> next;
    for (const auto& [a, b] : live) {
      if (a.gupper + b.gupper <= best.value + tol) continue;
      auto halves = [&](const Cell& x) {
        if (x.hw == 0) return std::vector<Cell>{x};
        return std::vector<Cell>{make_cell(x.mid - x.hw, x.mid), make_cell(x.mid, x.mid + x.hw)};
      };
      for (const auto& ca : halves(a)) {
        for (const auto& cb : halves(b)) consider(ca, cb, next);
      }
    }
    live = std::move(next);
  }
  for (const auto& [a, b] : live) upper = std::max(upper, a.gupper + b.gupper);

  if (best.value > -std::numeric_limits<double>::infinity()) {
    out.feasibility = Feasibility::Feasible;
    out.value = best.value;
    out.argmax = {best.t1, best.t2};
    upper = std::max(upper, best.value + tol);
  } else {
    out.feasibility = Feasibility::Undetermined;
    out.value = -std::numeric_limits<double>::infinity();
    if (upper == -std::numeric_limits<double>::infinity()) upper = tol;
  }
  out.upper = std::min(from_double(upper), cap);
  return out;
}

bool configuration_feasible(const Configuration& config, double cos_theta, const IntervalSet& T, double tol) {
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto& y = config[i];
    double norm = 0;
    for (double v : y) norm += v * v;
    if (std::abs(norm - 1) > 1e-9) return false;
    if (!T.contains(y[0])) {
      // Allow rounding right at an endpoint.
      if (std::abs(project_onto(T, y[0]) - y[0]) > tol) return false;
    }
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      double d = 0;
      for (std::size_t k = 0; k < y.size(); ++k) d += y[k] * config[j][k];
      if (d > cos_theta + tol) return false;
    }
  }
  return true;
}

namespace {

class PenaltySearch {
 public:
  PenaltySearch(int n, double cos_theta, const IntervalSet& T, int m, std::mt19937_64& rng)
      : n_(n), c_(cos_theta), T_(T), m_(m), rng_(rng) {}

  void randomize(Configuration& y) {
    std::normal_distribution<double> normal;
    y.assign(static_cast<std::size_t>(m_), std::vector<double>(static_cast<std::size_t>(n_)));
    for (auto& p : y) {
      for (int k = 1; k < n_; ++k) p[static_cast<std::size_t>(k)] = normal(rng_);
      set_pole(p, sample_in(T_, rng_));
    }
  }

  void set_pole(std::vector<double>& y, double t) {
    double perp = 0;
    for (int k = 1; k < n_; ++k) perp += y[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
    perp = std::sqrt(perp);
    if (perp < 1e-15) {
      std::normal_distribution<double> normal;
      for (int k = 1; k < n_; ++k) y[static_cast<std::size_t>(k)] = normal(rng_);
      set_pole(y, t);
      return;
    }
    double scale = std::sqrt(std::max(0.0, 1 - t * t)) / perp;
    y[0] = t;
    for (int k = 1; k < n_; ++k) y[static_cast<std::size_t>(k)] *= scale;
  }

  void project(std::vector<double>& y) {
    double norm = 0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : y) v /= norm;
    set_pole(y, project_onto(T_, y[0]));
  }

  /// One descent step on violation + weight * (-sum g); returns max violation.
  double step(Configuration& y, double eta, const RationalPoly* g, const RationalPoly* dg, double weight) {
    const double target = c_ - 1e-7;
    std::vector<std::vector<double>> grad(y.size(), std::vector<double>(static_cast<std::size_t>(n_), 0.0));
    double worst = -1;
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t j = i + 1; j < y.size(); ++j) {
        double d = 0;
        for (int k = 0; k < n_; ++k) d += y[i][static_cast<std::size_t>(k)] * y[j][static_cast<std::size_t>(k)];
        worst = std::max(worst, d - c_);
        double v = d - target;
        if (v <= 0) continue;
        for (int k = 0; k < n_; ++k) {
          grad[i][static_cast<std::size_t>(k)] += 2 * v * y[j][static_cast<std::size_t>(k)];
          grad[j][static_cast<std::size_t>(k)] += 2 * v * y[i][static_cast<std::size_t>(k)];
        }
      }
      if (g != nullptr) grad[i][0] -= weight * (*dg)(y[i][0]);
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (int k = 0; k < n_; ++k) y[i][static_cast<std::size_t>(k)] -= eta * grad[i][static_cast<std::size_t>(k)];
      project(y[i]);
    }
    return worst;
  }

 private:
  int n_;
  double c_;
  const IntervalSet& T_;
  int m_;
  std::mt19937_64& rng_;
};

}  // namespace

std::optional<Configuration> find_configuration(int n, double cos_theta, const IntervalSet& T, int m,
                                                const SearchOptions& options) {
  if (m < 1 || n < 2 || T.empty()) return std::nullopt;
  std::mt19937_64 rng(options.seed);
  PenaltySearch search(n, cos_theta, T, m, rng);
  Configuration y;
  for (int r = 0; r < options.restarts; ++r) {
    search.randomize(y);
    for (int it = 0; it < options.iterations; ++it) {
      double worst = search.step(y, 0.5, nullptr, nullptr, 0.0);
      if (worst <= 0 && configuration_feasible(y, cos_theta, T)) return y;
    }
    if (configuration_feasible(y, cos_theta, T)) return y;
  }
  return std::nullopt;
}

LevelBound h_m_heuristic(const RationalPoly& g, const IntervalSet& T, const Rational& cos_theta, int n, int m,
                         const SearchOptions& options) {
  LevelBound out;
  out.m = m;
  out.rigor = Rigor::Heuristic;
  out.value = -std::numeric_limits<double>::infinity();
  const double c = to_double(cos_theta);
  const RationalPoly dg = g.derivative();
  std::mt19937_64 rng(options.seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(m)));
  PenaltySearch search(n, c, T, m, rng);
  Configuration y;
  for (int r = 0; r < options.restarts; ++r) {
    search.randomize(y);
    for (int it = 0; it < options.iterations; ++it) {
      double weight = 0.05 * (1.0 - static_cast<double>(it) / options.iterations);
      search.step(y, 0.5, &g, &dg, weight);
    }
    for (int it = 0; it < options.iterations && !configuration_feasible(y, c, T); ++it) {
      search.step(y, 0.5, nullptr, nullptr, 0.0);
    }
    if (!configuration_feasible(y, c, T)) continue;
    double v = 0;
    std::vector<double> poles;
    for (const auto& p : y) {
      v += g(p[0]);
      poles.push_back(p[0]);
    }
    if (v > out.value) {
      out.value = v;
      out.argmax = poles;
    }
  }
  if (out.value > -std::numeric_limits<double>::infinity()) {
    out.feasibility = Feasibility::Feasible;
    out.upper = from_double(out.value);
  }
  return out;
}

HatH hat_h(const CapProfile& profile, const SearchOptions& options) {
  if (!profile.mu) {
    throw UnsupportedError("hat_h needs mu_bound: derive it from a T_m range (T = [-1,a]) or supply it");
  }
  require_restriction_set(profile.T);
  const int mu = profile.mu->value;
  if (mu < 1) throw UnsupportedError("mu_bound must be at least 1");
  HatH out;
  std::optional<Rational> best;
  for (int m = 1; m <= mu; ++m) {
    LevelBound level;
    if (m == 1) {
      H1Result h1 = h_1(profile.g, profile.T);
      level.m = 1;
      level.feasibility = Feasibility::Feasible;
      level.value = to_double(h1.upper);
      level.upper = h1.upper;
      level.rigor = Rigor::Rigorous;
      level.argmax = {to_double((h1.argmax_lo + h1.argmax_hi) / 2)};
    } else if (m == 2) {
      level = h_2(profile.g, profile.T, profile.cos_theta, profile.n);
    } else {
      level = h_m_heuristic(profile.g, profile.T, profile.cos_theta, profile.n, m, options);
    }
    out.rigor = min_rigor(out.rigor, level.rigor);
    if (level.feasibility != Feasibility::Infeasible &&
        !(level.rigor == Rigor::Heuristic && level.feasibility != Feasibility::Feasible)) {
      if (!best || level.upper > *best) best = level.upper;
    }
    out.levels.push_back(std::move(level));
  }
  out.value = *best;
  return out;
}

}  // namespace spherebound
