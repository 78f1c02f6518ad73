#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace voltlab {

using VertexId = int;
using DartId = int;

enum class EdgeKind { Semiedge, Loop, Link };

const char* to_string(EdgeKind kind);

/// One edge of a graph under construction. A Link joins two distinct
/// vertices, a Loop or Semiedge sits on a single vertex (v is ignored
/// for those).
struct EdgeSpec {
  EdgeKind kind;
  VertexId u = 0;
  VertexId v = 0;

  static EdgeSpec link(VertexId a, VertexId b) { return {EdgeKind::Link, a, b}; }
  static EdgeSpec loop(VertexId a) { return {EdgeKind::Loop, a, a}; }
  static EdgeSpec semiedge(VertexId a) { return {EdgeKind::Semiedge, a, a}; }
};

/// Finite symmetric multidigraph: darts 0..dart_count-1 carry source and
/// target vertices plus a dart-reversing involution subject to
/// reverse(reverse(d)) == d and src(reverse(d)) == tgt(d).
///
/// Immutable once built. The checked constructor throws
/// std::invalid_argument on any axiom violation; unchecked() skips the
/// axioms (shape only) so tests can build deliberately broken graphs.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<VertexId> src, std::vector<VertexId> tgt,
        std::vector<DartId> lam, std::vector<std::string> vertex_names = {});

  static Graph unchecked(int vertex_count, std::vector<VertexId> src,
                         std::vector<VertexId> tgt, std::vector<DartId> lam,
                         std::vector<std::string> vertex_names = {});

  int vertex_count() const { return n_; }
  int dart_count() const { return static_cast<int>(src_.size()); }

  VertexId src(DartId d) const { return src_[check_dart(d)]; }
  VertexId tgt(DartId d) const { return tgt_[check_dart(d)]; }
  DartId reverse(DartId d) const { return lam_[check_dart(d)]; }

  bool has_vertex_names() const { return !names_.empty(); }
  /// Declared name, or "v<id>" when the graph is unnamed.
  std::string vertex_name(VertexId v) const;
  const std::vector<std::string>& raw_vertex_names() const { return names_; }
  Graph with_vertex_names(std::vector<std::string> names) const;

  const std::vector<VertexId>& src_map() const { return src_; }
  const std::vector<VertexId>& tgt_map() const { return tgt_; }
  const std::vector<DartId>& lambda_map() const { return lam_; }

  /// Structural equality; display names are not compared.
  bool operator==(const Graph& other) const;
  bool operator!=(const Graph& other) const { return !(*this == other); }

 private:
  DartId check_dart(DartId d) const;

  int n_ = 0;
  std::vector<VertexId> src_;
  std::vector<VertexId> tgt_;
  std::vector<DartId> lam_;
  std::vector<std::string> names_;  // empty, or one name per vertex
};

/// Builds a graph edge by edge. Link and Loop each add a dart pair
/// {d, reverse(d)} with the forward dart first; a Semiedge adds a single
/// dart fixed by the involution. Dart ids follow insertion order.
Graph build_graph(int vertex_count, const std::vector<EdgeSpec>& edges,
                  std::vector<std::string> vertex_names = {});

/// First violated graph axiom (totality, involution, src-after-reverse),
/// or nullopt when the graph is well formed.
std::optional<std::string> validate_graph(const Graph& g);

EdgeKind classify_edge(const Graph& g, DartId d);

/// Involution orbits as (least dart, partner) pairs, ordered by least
/// dart id; both components are equal for a semiedge.
std::vector<std::pair<DartId, DartId>> edges(const Graph& g);

/// Darts with target v, ascending.
std::vector<DartId> in_neighbourhood(const Graph& g, VertexId v);

/// Pair of vertex/dart maps between two graphs. The constructor checks
/// totality and ranges only; validate_morphism checks the commuting
/// conditions with src/tgt/reverse.
class GraphMorphism {
 public:
  GraphMorphism(Graph domain, Graph codomain, std::vector<VertexId> vmap,
                std::vector<DartId> dmap);

  static GraphMorphism identity(const Graph& g);

  const Graph& domain() const { return domain_; }
  const Graph& codomain() const { return codomain_; }

  VertexId v(VertexId x) const { return vmap_[x]; }
  DartId d(DartId x) const { return dmap_[x]; }
  const std::vector<VertexId>& vmap() const { return vmap_; }
  const std::vector<DartId>& dmap() const { return dmap_; }

  bool is_vertex_bijective() const;
  bool is_dart_bijective() const;

  bool operator==(const GraphMorphism& other) const;
  bool operator!=(const GraphMorphism& other) const { return !(*this == other); }

 private:
  Graph domain_;
  Graph codomain_;
  std::vector<VertexId> vmap_;
  std::vector<DartId> dmap_;
};

std::optional<std::string> validate_morphism(const GraphMorphism& f);

/// Diagrammatic composition: first f, then g. Requires
/// codomain(f) == domain(g) structurally.
GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g);

/// Pullback of a cospan f1: G1 -> H <- G2 :f2, computed pointwise.
/// Apex vertices/darts are the pairs on which f1 and f2 agree, listed in
/// lexicographic (left id, right id) order; that ordering is a contract
/// other modules rely on.
struct PullbackResult {
  Graph apex;
  GraphMorphism proj_left;   // apex -> G1
  GraphMorphism proj_right;  // apex -> G2
  std::vector<std::pair<VertexId, VertexId>> vertex_index;
  std::vector<std::pair<DartId, DartId>> dart_index;

  std::optional<VertexId> find_vertex(VertexId left, VertexId right) const;
  std::optional<DartId> find_dart(DartId left, DartId right) const;

  /// The unique mediating morphism for a commuting outer square, or
  /// nullopt when the square does not commute (some pair is missing from
  /// the apex).
  std::optional<GraphMorphism> mediate(const GraphMorphism& to_left,
                                       const GraphMorphism& to_right) const;
};

PullbackResult pullback(const GraphMorphism& f1, const GraphMorphism& f2);

/// Product of two graphs: all vertex/dart pairs with componentwise
/// structure maps; equals the pullback over the terminal cospan.
PullbackResult product(const Graph& g1, const Graph& g2);

inline constexpr int kDefaultIsoVertexCap = 64;

/// Backtracking isomorphism search pruned by per-vertex
/// (degree, semiedge, loop, link) signatures and pairwise dart counts.
/// Returns a valid bijective-on-both-sorts morphism, or nullopt.
/// Throws when either graph exceeds vertex_cap.
std::optional<GraphMorphism> find_isomorphism(const Graph& g1, const Graph& g2,
                                              int vertex_cap = kDefaultIsoVertexCap);

/// f is a fibration when its dart map restricts to a bijection
/// N(v) -> N(f(v)) on every in-neighbourhood.
bool is_fibration(const GraphMorphism& f);

/// Same predicate via the set-pullback criterion: the square formed by
/// tgt and the two component maps is a pullback in Set. Kept as an
/// independent route; the two implementations are equivalence-tested.
bool is_fibration_by_pullback_square(const GraphMorphism& f);

/// Fibration surjective on vertices.
bool is_covering(const GraphMorphism& f);

struct GraphStats {
  int vertices = 0;
  int darts = 0;
  int edges = 0;
  int semiedges = 0;
  int loops = 0;
  int links = 0;
  std::vector<int> degrees;          // per vertex; darts counted by source
  std::vector<int> degree_sequence;  // degrees, non-increasing
  int components = 0;
  std::optional<int> diameter;       // nullopt = infinite (not connected)
};

/// Semiedges contribute to degree but not to adjacency; distances use
/// links and loops only.
GraphStats graph_stats(const Graph& g);

struct MorphismEnumCaps {
  int max_domain_vertices = 4;
  int max_domain_darts = 8;
};

/// Every morphism dom -> cod, in lexicographic order of (vmap, dmap).
/// Throws when dom exceeds the caps.
std::vector<GraphMorphism> enumerate_graph_morphisms(const Graph& dom, const Graph& cod,
                                                     const MorphismEnumCaps& caps = {});

namespace detail {

/// Shared backtracking core for morphism enumeration. The filters may be
/// empty; vertex_ok(v, w) and dart_ok(d, e) veto candidate images.
std::vector<GraphMorphism> enumerate_morphisms_filtered(
    const Graph& dom, const Graph& cod,
    const std::function<bool(VertexId, VertexId)>& vertex_ok,
    const std::function<bool(DartId, DartId)>& dart_ok);

}  // namespace detail

}  // namespace voltlab
