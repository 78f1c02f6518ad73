#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voltlab/core_graph.hpp"
#include "voltlab/groups.hpp"

namespace voltlab {

/// Graph with a group element on every vertex.
class LabeledGraph {
 public:
  LabeledGraph(Graph graph, FiniteGroup group, std::vector<int> beta);
  static LabeledGraph unchecked(Graph graph, FiniteGroup group, std::vector<int> beta);

  const Graph& graph() const { return graph_; }
  const FiniteGroup& group() const { return group_; }
  int label(VertexId v) const { return beta_[v]; }
  const std::vector<int>& beta() const { return beta_; }

  bool operator==(const LabeledGraph& o) const {
    return graph_ == o.graph_ && group_ == o.group_ && beta_ == o.beta_;
  }
  bool operator!=(const LabeledGraph& o) const { return !(*this == o); }

 private:
  LabeledGraph() = default;
  Graph graph_;
  FiniteGroup group_ = FiniteGroup::cyclic(1);
  std::vector<int> beta_;
};

/// Graph with a group element on every dart, inverse-compatible with the
/// involution: voltage(reverse(d)) == inv(voltage(d)). The checked
/// constructor enforces this (in particular a semiedge voltage must be
/// an involution); unchecked() exists for mutation tests.
class VoltageGraph {
 public:
  VoltageGraph(Graph graph, FiniteGroup group, std::vector<int> alpha);
  static VoltageGraph unchecked(Graph graph, FiniteGroup group, std::vector<int> alpha);

  const Graph& graph() const { return graph_; }
  const FiniteGroup& group() const { return group_; }
  int voltage(DartId d) const { return alpha_[d]; }
  const std::vector<int>& alpha() const { return alpha_; }

  bool operator==(const VoltageGraph& o) const {
    return graph_ == o.graph_ && group_ == o.group_ && alpha_ == o.alpha_;
  }
  bool operator!=(const VoltageGraph& o) const { return !(*this == o); }

 private:
  VoltageGraph() = default;
  Graph graph_;
  FiniteGroup group_ = FiniteGroup::cyclic(1);
  std::vector<int> alpha_;
};

std::optional<std::string> validate_labeled_graph(const LabeledGraph& lg);
std::optional<std::string> validate_voltage_graph(const VoltageGraph& vg);

/// Edge-level voltage input: the forward dart takes `voltage`, the
/// reverse dart its inverse, so the involution law holds by
/// construction.
struct VoltEdgeSpec {
  EdgeSpec edge;
  int voltage = 0;
};

VoltageGraph build_voltage_graph(int vertex_count, const FiniteGroup& group,
                                 const std::vector<VoltEdgeSpec>& edges,
                                 std::vector<std::string> vertex_names = {});

LabeledGraph build_labeled_graph(int vertex_count, const FiniteGroup& group,
                                 const std::vector<EdgeSpec>& edges,
                                 std::vector<int> beta,
                                 std::vector<std::string> vertex_names = {});

/// Morphism of voltage graphs: a graph morphism plus a group hom with
/// h(voltage(d)) == voltage'(f(d)). The constructor checks that the
/// pieces fit the stated endpoints; validate_volt_morphism checks the
/// equations.
class VoltMorphism {
 public:
  VoltMorphism(VoltageGraph domain, VoltageGraph codomain, GraphMorphism f, GroupHom h);
  static VoltMorphism identity(const VoltageGraph& vg);

  const VoltageGraph& domain() const { return domain_; }
  const VoltageGraph& codomain() const { return codomain_; }
  const GraphMorphism& f() const { return f_; }
  const GroupHom& h() const { return h_; }

  bool operator==(const VoltMorphism& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_ && f_ == o.f_ && h_ == o.h_;
  }
  bool operator!=(const VoltMorphism& o) const { return !(*this == o); }

 private:
  VoltageGraph domain_;
  VoltageGraph codomain_;
  GraphMorphism f_;
  GroupHom h_;
};

/// Morphism of labeled graphs, with h(label(v)) == label'(f(v)).
class LabMorphism {
 public:
  LabMorphism(LabeledGraph domain, LabeledGraph codomain, GraphMorphism f, GroupHom h);
  static LabMorphism identity(const LabeledGraph& lg);

  const LabeledGraph& domain() const { return domain_; }
  const LabeledGraph& codomain() const { return codomain_; }
  const GraphMorphism& f() const { return f_; }
  const GroupHom& h() const { return h_; }

  bool operator==(const LabMorphism& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_ && f_ == o.f_ && h_ == o.h_;
  }
  bool operator!=(const LabMorphism& o) const { return !(*this == o); }

 private:
  LabeledGraph domain_;
  LabeledGraph codomain_;
  GraphMorphism f_;
  GroupHom h_;
};

std::optional<std::string> validate_volt_morphism(const VoltMorphism& m);
std::optional<std::string> validate_lab_morphism(const LabMorphism& m);

VoltMorphism compose(const VoltMorphism& a, const VoltMorphism& b);
LabMorphism compose(const LabMorphism& a, const LabMorphism& b);

/// Complete graph with semiedges on the elements of the group: one
/// vertex per element, one dart per ordered pair (lexicographic), with
/// src/tgt the components and the involution swapping them.
Graph k_ring(const FiniteGroup& group);

/// k_ring applied to a hom: componentwise on vertices and dart pairs.
GraphMorphism k_on_hom(const GroupHom& h);

/// One-vertex graph with one dart per group element; the involution is
/// group inversion, so involutions become semiedges and other elements
/// pair into loops.
Graph ell(const FiniteGroup& group);

GraphMorphism ell_on_hom(const GroupHom& h);

/// The quotient morphism k_ring(G) -> ell(G), (u, v) |-> inv(u)*v.
GraphMorphism q_morphism(const FiniteGroup& group);

/// A vertex labeling is the same thing as a graph morphism into k_ring;
/// a voltage is the same thing as a graph morphism into ell.
GraphMorphism label_as_morphism(const LabeledGraph& lg);
GraphMorphism voltage_as_morphism(const VoltageGraph& vg);

/// Left adjoint on objects: voltages are quotients of the endpoint
/// labels, alpha(d) = inv(beta(src(d))) * beta(tgt(d)).
VoltageGraph functor_L(const LabeledGraph& lg);

/// Left adjoint on morphisms: the same (f, h) pair, revalidated.
VoltMorphism functor_L_on_morphism(const LabMorphism& m);

/// Right adjoint on objects: the pullback of q_morphism along the
/// voltage, labeled by the k_ring component. Keeps the raw pullback so
/// downstream constructions can translate through its indexing.
struct RImage {
  LabeledGraph labeled;
  GraphMorphism projection;  // apex -> vg.graph, the pullback of q along the voltage
  PullbackResult pb;
};

RImage functor_R(const VoltageGraph& vg);

LabMorphism functor_R_on_morphism(const VoltMorphism& m);

/// Derived (lift) voltage graph: vertices and darts are (base, group
/// element) pairs indexed base * order + element, with
///   src(d, x) = (src(d), x)
///   tgt(d, x) = (tgt(d), x * alpha(d))
///   reverse(d, x) = (reverse(d), x * alpha(d))
/// and the lifted dart keeping the base voltage. Fiber vertices are
/// named "<base>@<element>".
VoltageGraph derived(const VoltageGraph& vg);

/// The canonical projection derived(vg) -> vg.graph.
GraphMorphism derived_projection(const VoltageGraph& vg);

/// Counit of the adjunction at vg: (projection, identity hom) from
/// functor_L(functor_R(vg)) to vg. The second overload reuses a
/// precomputed R image.
VoltMorphism counit(const VoltageGraph& vg);
VoltMorphism counit(const VoltageGraph& vg, const RImage& r);

/// Universal factorization through the counit: for m = (f, h) from
/// functor_L(lg) to vg, the unique (u, h) from lg to functor_R(vg) with
/// counit . L(u, h) == m. Computed by the explicit pointwise formula and
/// cross-checked against the generic pullback mediator.
LabMorphism universal_factorization(const LabeledGraph& lg, const VoltageGraph& vg,
                                    const VoltMorphism& m);

/// Voltage-preserving isomorphism from functor_L(functor_R(vg)) to
/// derived(vg): identity on vertex pairs, (d, (x1, x2)) |-> (d, x1) on
/// darts. The second overload reuses a precomputed R image.
VoltMorphism iso_j(const VoltageGraph& vg);
VoltMorphism iso_j(const VoltageGraph& vg, const RImage& r);

/// Componentwise products in Volt and Lab over the product group.
VoltageGraph volt_product(const VoltageGraph& v1, const VoltageGraph& v2);
LabeledGraph lab_product(const LabeledGraph& l1, const LabeledGraph& l2);

/// Explicit reindexing isomorphisms k_ring(G1 x G2) -> k_ring(G1) x
/// k_ring(G2) and ell(G1 x G2) -> ell(G1) x ell(G2); both land in the
/// apex of product().
GraphMorphism k_ring_product_iso(const FiniteGroup& g1, const FiniteGroup& g2);
GraphMorphism ell_product_iso(const FiniteGroup& g1, const FiniteGroup& g2);

struct EnumCaps {
  int max_domain_vertices = 4;
  int max_domain_darts = 8;
  int max_group_order = 4;
};

/// Exhaustive, duplicate-free morphism enumeration by backtracking over
/// (hom, vertex map, dart map) with structure/compatibility pruning.
/// The caps bound the domain graph and both group orders; exceeding
/// them throws.
std::vector<LabMorphism> enumerate_lab_morphisms(const LabeledGraph& lg1,
                                                 const LabeledGraph& lg2,
                                                 const EnumCaps& caps = {});
std::vector<VoltMorphism> enumerate_volt_morphisms(const VoltageGraph& vg1,
                                                   const VoltageGraph& vg2,
                                                   const EnumCaps& caps = {});

}  // namespace voltlab
