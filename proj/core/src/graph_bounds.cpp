#include "spherebound/graph_bounds.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "spherebound/roots.hpp"

namespace spherebound {

DistanceGraph DistanceGraph::from_table(const CosineTable& table, const IntervalSet& T) {
  std::vector<bool> in_T(table.values().size());
  for (std::size_t i = 0; i < in_T.size(); ++i) in_T[i] = T.contains(table.values()[i]);
  DistanceGraph G;
  for (std::size_t u = 0; u < table.size(); ++u) {
    for (std::size_t v = u + 1; v < table.size(); ++v) {
      if (in_T[table.index(u, v)]) G.edges_.push_back({u, v, table.cosine(u, v)});
    }
  }
  G.adjacency_.resize(table.size());
  G.build_adjacency();
  return G;
}

DistanceGraph DistanceGraph::from_code(const SphericalCode& code, const IntervalSet& T) {
  return from_table(CosineTable(code), T);
}

DistanceGraph DistanceGraph::from_edges(std::size_t N, std::vector<GraphEdge> edges) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    if (e.u == e.v || e.u >= N || e.v >= N) throw UnsupportedError("edge endpoints must be distinct vertices");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert({e.u, e.v}).second) throw UnsupportedError("repeated edge");
  }
  DistanceGraph G;
  G.edges_ = std::move(edges);
  G.adjacency_.resize(N);
  G.build_adjacency();
  return G;
}

void DistanceGraph::build_adjacency() {
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::size_t DistanceGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adjacency_) d = std::max(d, list.size());
  return d;
}

std::vector<std::size_t> DistanceGraph::component_sizes() const {
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < size(); ++s) {
    if (seen[s]) continue;
    std::size_t count = 0;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      ++count;
      for (std::size_t w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(count);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::size_t DistanceGraph::k(std::size_t i) const {
  auto sizes = component_sizes();
  return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), i));
}

std::string DistanceGraph::adjacency_text() const {
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> labeled(size());
  for (const auto& e : edges_) {
    labeled[e.u].push_back({e.v, &e.cosine});
    labeled[e.v].push_back({e.u, &e.cosine});
  }
  std::ostringstream out;
  for (std::size_t v = 0; v < size(); ++v) {
    std::sort(labeled[v].begin(), labeled[v].end());
    out << v << ':';
    for (const auto& [w, c] : labeled[v]) out << ' ' << w << '(' << to_string(*c) << ')';
    out << '\n';
  }
  return out.str();
}

Rational h_g_sum(const DistanceGraph& G, const RationalPoly& g) {
  Rational sum = 0;
  for (const auto& e : G.edges()) sum += g(e.cosine);
  return sum;
}

std::optional<std::array<std::size_t, 3>> find_triangle(const DistanceGraph& G) {
  const auto& adj = G.adjacency();
  for (const auto& e : G.edges()) {
    const auto& a = adj[e.u];
    const auto& b = adj[e.v];
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (!common.empty()) return std::array<std::size_t, 3>{e.u, e.v, common.front()};
  }
  return std::nullopt;
}

std::string_view to_string(TauMethod method) {
  switch (method) {
    case TauMethod::NHatH: return "nhath";
    case TauMethod::M1Refined: return "m1";
    case TauMethod::Prop1: return "prop1";
    case TauMethod::UserSupplied: return "user";
  }
  return "user";
}

TauBound tau_upper(const DistanceGraph& G, const TauInputs& in, TauMethod method) {
  TauBound t;
  t.method = method;
  const Rational k1 = static_cast<long>(G.k(1));
  switch (method) {
    case TauMethod::NHatH: {
      Rational h = in.hath > 0 ? in.hath : Rational(0);
      t.alpha = 0;
      t.beta = h / 2;
      t.rigor = in.hath_rigor;
      t.note = "2 tau <= N max(hath, 0)";
      return t;
    }
    case TauMethod::M1Refined: {
      if (G.max_degree() > 1) {
        throw PremiseError("max degree <= 1", "vertex degree " + std::to_string(G.max_degree()));
      }
      t.alpha = -k1 * in.h1 / 2;
      t.beta = in.h1 / 2;
      t.rigor = in.h1_rigor;
      t.note = "2 tau <= (N - k_1) h_1";
      return t;
    }
    case TauMethod::Prop1: {
      if (!in.h2) throw PremiseError("h_2 available", "Prop1 needs an upper bound for h_2");
      if (!(in.h1_lower > *in.h2)) {
        throw PremiseError("h_1 > h_2", "h_1 >= " + to_string(in.h1_lower) + ", h_2 <= " + to_string(*in.h2));
      }
      if (G.max_degree() > 2) {
        throw PremiseError("max degree <= 2", "vertex degree " + std::to_string(G.max_degree()));
      }
      if (auto tri = find_triangle(G)) {
        throw PremiseError("triangle free", "triangle " + std::to_string((*tri)[0]) + " " +
                                                std::to_string((*tri)[1]) + " " + std::to_string((*tri)[2]));
      }
      auto sizes = G.component_sizes();
      if (!sizes.empty() && sizes.front() > 3) {
        throw PremiseError("components of at most 3 vertices",
                           "found a component with " + std::to_string(sizes.front()) + " vertices");
      }
      const Rational k2 = static_cast<long>(G.k(2));
      const Rational k3 = static_cast<long>(G.k(3));
      t.beta = *in.h2 / 2;
      t.alpha = (2 * k2 * in.h1 - (k1 + 2 * k2 + k3) * *in.h2) / 2;
      t.rigor = min_rigor(in.h1_rigor, in.h2_rigor);
      t.note = "2 tau <= 2 k_2 h_1 + (N - k_1 - 2 k_2 - k_3) h_2";
      return t;
    }
    case TauMethod::UserSupplied: break;
  }
  throw UnsupportedError("user supplied tau needs a value; use tau_user");
}

TauBound tau_user(const Rational& value) {
  TauBound t;
  t.alpha = value;
  t.beta = 0;
  t.method = TauMethod::UserSupplied;
  t.rigor = Rigor::Heuristic;
  t.note = "user supplied";
  return t;
}

NBound graph_bound(const Rational& F111, const Rational& f0, const Rational& B, const TauBound& tau) {
  if (f0 <= 0) throw PremiseError("f0 > 0", "f0 = " + to_string(f0));
  return {max_n_quadratic(f0, 3 * B + 6 * tau.beta, F111 - 3 * B + 6 * tau.alpha), tau.rigor,
          "graph bound (tau: " + std::string(to_string(tau.method)) + ")"};
}

ContactBound contact_edge_lower_bound(const Certificate& cert, long N, const Rational& s, const Rational& a) {
  if (N < 1) throw UnsupportedError("N must be positive");
  if (a < 0) throw PremiseError("a >= 0", "a = " + to_string(a));
  Certificate c = cert;
  c.T = IntervalSet::interval(s - a, s);
  if (!is_nonnegative(sign_on_interval(c.g.derivative(), s - a, s))) {
    throw PremiseError("g nondecreasing on T_a", "g' changes sign on [" + to_string(s - a) + ", " + to_string(s) + "]");
  }
  Rational gs = c.g(s);
  if (gs <= 0) throw PremiseError("g(s) > 0", "g(s) = " + to_string(gs));
  CertReport report = verify(c);
  require_verified(c, report);
  const Rational n = N;
  ContactBound out;
  out.a = a;
  out.R = (c.f0 * n * n - c.F111() - 3 * (n - 1) * c.B) / (6 * gs);
  out.edges_lower = ceil(out.R);
  if (out.edges_lower < 0) out.edges_lower = 0;
  out.P = Rational(out.edges_lower) / n;
  out.P.canonicalize();
  out.rigor = report.rigor();
  return out;
}

std::vector<SweepEntry> contact_sweep(const Certificate& cert, long N, const Rational& s,
                                      const std::vector<Rational>& as) {
  std::vector<SweepEntry> out;
  for (const auto& a : as) {
    SweepEntry e{a, std::nullopt, {}};
    try {
      e.bound = contact_edge_lower_bound(cert, N, s, a);
    } catch (const Error& err) {
      e.failure = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace spherebound
