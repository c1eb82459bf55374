#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spherebound/codes.hpp"
#include "spherebound/sdp_cert.hpp"

namespace spherebound {

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  Rational cosine;
};

/// DG(C, T): vertices are code points, edges the pairs whose cosine is in T.
class DistanceGraph {
 public:
  static DistanceGraph from_table(const CosineTable& table, const IntervalSet& T);
  static DistanceGraph from_code(const SphericalCode& code, const IntervalSet& T);
  /// Edges with u == v or repeated pairs are rejected.
  static DistanceGraph from_edges(std::size_t N, std::vector<GraphEdge> edges);

  std::size_t size() const { return adjacency_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;
  /// Vertex counts of the connected components, sorted descending.
  std::vector<std::size_t> component_sizes() const;
  /// Number of components with exactly i vertices.
  std::size_t k(std::size_t i) const;

  /// Adjacency list, one vertex per line: "v: w(cos) w(cos) ...".
  std::string adjacency_text() const;

 private:
  void build_adjacency();
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// H_g(C, T): sum of g over the edge cosines.
Rational h_g_sum(const DistanceGraph& G, const RationalPoly& g);

/// A triangle of G, if any.
std::optional<std::array<std::size_t, 3>> find_triangle(const DistanceGraph& G);
inline bool triangle_free(const DistanceGraph& G) { return !find_triangle(G); }

enum class TauMethod { NHatH, M1Refined, Prop1, UserSupplied };

std::string_view to_string(TauMethod method);

/// Upper bound 2 tau <= 2 (alpha + beta N), linear in the code size so that
/// it can enter the quadratic of the graph bound.
struct TauBound {
  Rational alpha;
  Rational beta;
  TauMethod method = TauMethod::NHatH;
  Rigor rigor = Rigor::Rigorous;
  std::string note;

  Rational value(const Rational& N) const { return alpha + beta * N; }
};

/// Cap quantities feeding the tau bounds. Values are certified upper bounds;
/// h1_lower is a lower bound used for the premise h_1 > h_2.
struct TauInputs {
  Rational h1;
  Rational h1_lower;
  Rigor h1_rigor = Rigor::Rigorous;
  std::optional<Rational> h2;
  Rigor h2_rigor = Rigor::Numeric;
  Rational hath;
  Rigor hath_rigor = Rigor::Rigorous;
};

/// NHatH:     2 tau <= N max(hath, 0)
/// M1Refined: 2 tau <= (N - k_1) h_1, needs max degree <= 1
/// Prop1:     2 tau <= 2 k_2 h_1 + (N - k_1 - 2 k_2 - k_3) h_2, needs
///            h_1 > h_2, max degree <= 2, no triangles and no component
///            with more than three vertices.
/// Throws PremiseError naming a failed premise.
TauBound tau_upper(const DistanceGraph& G, const TauInputs& inputs, TauMethod method);
TauBound tau_user(const Rational& value);

/// Largest N with f0 N^2 - 3 B N - 6 tau(N) - (F(1,1,1) - 3 B) <= 0.
NBound graph_bound(const Rational& F111, const Rational& f0, const Rational& B, const TauBound& tau);

struct ContactBound {
  Rational a;
  /// R_a = (f0 N^2 - F(1,1,1) - 3(N-1)B) / (6 g(s)).
  Rational R;
  /// |E(C, T_a)| >= ceil(R_a).
  Integer edges_lower;
  /// ceil(R_a) / N, so that A(T_a) >= 2 P_a.
  Rational P;
  Rigor rigor = Rigor::Rigorous;
};

/// Edge lower bound for T_a = [s - a, s]. The certificate is re-verified
/// with T replaced by T_a; g must be nondecreasing on T_a and g(s) > 0.
ContactBound contact_edge_lower_bound(const Certificate& cert, long N, const Rational& s, const Rational& a);

struct SweepEntry {
  Rational a;
  std::optional<ContactBound> bound;
  std::string failure;
};

/// contact_edge_lower_bound for each a; failures are recorded, not thrown.
std::vector<SweepEntry> contact_sweep(const Certificate& cert, long N, const Rational& s,
                                      const std::vector<Rational>& as);

}  // namespace spherebound
