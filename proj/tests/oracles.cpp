#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

std::vector<Rational> moments(int n, int count) {
  std::vector<Rational> m(count, Rational(0));
  m[0] = 1;
  for (int j = 0; 2 * j + 2 < count; ++j) {
    m[2 * j + 2] = m[2 * j] * spherebound::ratio(2 * j + 1, 2 * j + n);
  }
  return m;
}

Rational eval(const Coeffs& c, const Rational& x) {
  Rational v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

Rational inner_with(const Coeffs& a, const Coeffs& b, const std::vector<Rational>& m) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * m[i + j];
  }
  return s;
}

}  // namespace

Rational weighted_inner(const Coeffs& a, const Coeffs& b, int n) {
  return inner_with(a, b, moments(n, static_cast<int>(a.size() + b.size()) + 1));
}

std::vector<Coeffs> orthogonal_basis(int n, int max_k) {
  auto m = moments(n, 2 * max_k + 2);
  std::vector<Coeffs> q;
  for (int k = 0; k <= max_k; ++k) {
    Coeffs xk(k + 1, Rational(0));
    xk[k] = 1;
    Coeffs v = xk;
    for (const auto& qj : q) {
      Rational proj = inner_with(xk, qj, m) / inner_with(qj, qj, m);
      for (std::size_t i = 0; i < qj.size(); ++i) v[i] -= proj * qj[i];
    }
    Rational at_one = eval(v, Rational(1));
    for (auto& c : v) c /= at_one;
    q.push_back(v);
  }
  return q;
}

Coeffs moment_expansion(const spherebound::RationalPoly& p, int n) {
  int d = p.degree();
  auto q = orthogonal_basis(n, d);
  auto m = moments(n, 2 * d + 2);
  Coeffs c;
  for (int k = 0; k <= d; ++k) c.push_back(inner_with(p.coeffs(), q[k], m) / inner_with(q[k], q[k], m));
  return c;
}

double sampled_max(const spherebound::RationalPoly& p, double lo, double hi, int samples) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    double x = lo + (hi - lo) * i / samples;
    best = std::max(best, p(x));
  }
  return best;
}

SampledSign sampled_sign(const spherebound::RationalPoly& p, const Rational& lo, const Rational& hi, int samples) {
  SampledSign s;
  for (int i = 0; i <= samples; ++i) {
    Rational x = lo + (hi - lo) * spherebound::ratio(i, samples);
    Rational v = p(x);
    if (v > 0) s.positive = true;
    if (v < 0) s.negative = true;
  }
  return s;
}

namespace {

struct H2Oracle {
  const spherebound::RationalPoly& g;
  std::vector<std::pair<double, double>> parts;
  std::vector<double> critical;
  double theta;

  // max of g over T intersected with [lo, hi], from endpoints and critical points.
  double inner(double lo, double hi) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : parts) {
      double l = std::max(a, lo), h = std::min(b, hi);
      if (l > h) continue;
      best = std::max({best, g(l), g(h)});
      for (double c : critical) {
        if (c > l && c < h) best = std::max(best, g(c));
      }
    }
    return best;
  }

  double at(double phi1) const {
    double lo_phi = std::max(0.0, theta - phi1);
    double hi_phi = std::min(M_PI, 2 * M_PI - theta - phi1);
    if (lo_phi > hi_phi) return -std::numeric_limits<double>::infinity();
    return g(std::cos(phi1)) + inner(std::cos(hi_phi), std::cos(lo_phi));
  }
};

// Sign changes of g' on a fine grid, polished by bisection.
std::vector<double> critical_points(const spherebound::RationalPoly& g) {
  auto dg = g.derivative();
  std::vector<double> out;
  const int n = 20000;
  double prev_x = -1, prev = dg(-1.0);
  for (int i = 1; i <= n; ++i) {
    double x = -1 + 2.0 * i / n;
    double v = dg(x);
    if (v == 0) out.push_back(x);
    if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) {
      double a = prev_x, b = x, fa = prev;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (a + b);
        double fm = dg(mid);
        if ((fa < 0) == (fm < 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev = v;
  }
  return out;
}

}  // namespace

double h2_angles(const spherebound::RationalPoly& g, const spherebound::IntervalSet& T, double cos_theta) {
  H2Oracle o{g, {}, critical_points(g), std::acos(cos_theta)};
  for (const auto& p : T.parts()) o.parts.emplace_back(spherebound::to_double(p.lo), spherebound::to_double(p.hi));
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : o.parts) {
    double phi_lo = std::acos(b), phi_hi = std::acos(a);
    const int coarse = 20000;
    double step = (phi_hi - phi_lo) / coarse;
    double arg = phi_lo, local = o.at(phi_lo);
    for (int i = 1; i <= coarse; ++i) {
      double phi = phi_lo + step * i;
      double v = o.at(phi);
      if (v > local) {
        local = v;
        arg = phi;
      }
    }
    // Zoom in around the best sample.
    for (int round = 0; round < 6 && step > 0; ++round) {
      double lo = std::max(phi_lo, arg - 2 * step), hi = std::min(phi_hi, arg + 2 * step);
      const int fine = 400;
      step = (hi - lo) / fine;
      for (int i = 0; i <= fine; ++i) {
        double phi = lo + step * i;
        double v = o.at(phi);
        if (v > local) {
          local = v;
          arg = phi;
        }
      }
    }
    best = std::max(best, local);
  }
  return best;
}

double gegenbauer_explicit(int k, double lambda, double x) {
  if (lambda == 0) {
    double prev = 1, cur = x;
    if (k == 0) return 1;
    for (int i = 1; i < k; ++i) {
      double next = 2 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  auto raw = [&](double t) {
    double s = 0;
    for (int j = 0; 2 * j <= k; ++j) {
      double term = std::exp(std::lgamma(k - j + lambda) - std::lgamma(lambda) - std::lgamma(j + 1.0) -
                             std::lgamma(k - 2 * j + 1.0));
      s += (j % 2 ? -1 : 1) * term * std::pow(2 * t, k - 2 * j);
    }
    return s;
  };
  return raw(x) / raw(1.0);
}

std::vector<std::vector<double>> s_matrix_numeric(int n, int k, int d, double x, double y, double z) {
  int size = d + 1 - k;
  std::vector<std::vector<double>> out(size, std::vector<double>(size, 0.0));
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  const std::array<double, 3> v{x, y, z};
  double lambda = (n - 3) / 2.0;
  for (const auto& p : perms) {
    double a = v[p[0]], b = v[p[1]], c = v[p[2]];
    double root = std::sqrt((1 - a * a) * (1 - b * b));
    double core = std::pow(root, k) * gegenbauer_explicit(k, lambda, (c - a * b) / root);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) out[i][j] += std::pow(a, i) * std::pow(b, j) * core / 6.0;
    }
  }
  return out;
}

}  // namespace oracle
