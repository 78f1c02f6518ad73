#include "voltlab/constructions.hpp"

#include <numeric>
#include <stdexcept>

namespace voltlab {

namespace {

std::optional<std::string> labeled_violation(const Graph& g, const FiniteGroup& grp,
                                             const std::vector<int>& beta) {
  if (auto why = validate_graph(g)) return why;
  if (beta.size() != static_cast<size_t>(g.vertex_count()))
    return std::string("labeling is not total over the vertices");
  for (size_t v = 0; v < beta.size(); ++v)
    if (beta[v] < 0 || beta[v] >= grp.order())
      return "label out of range at vertex " + std::to_string(v);
  return std::nullopt;
}

std::optional<std::string> voltage_violation(const Graph& g, const FiniteGroup& grp,
                                             const std::vector<int>& alpha) {
  if (auto why = validate_graph(g)) return why;
  if (alpha.size() != static_cast<size_t>(g.dart_count()))
    return std::string("voltage is not total over the darts");
  for (size_t d = 0; d < alpha.size(); ++d)
    if (alpha[d] < 0 || alpha[d] >= grp.order())
      return "voltage out of range at dart " + std::to_string(d);
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (alpha[g.reverse(d)] != grp.inv(alpha[d]))
      return "voltage of dart " + std::to_string(g.reverse(d)) +
             " is not inverse to the voltage of dart " + std::to_string(d);
  return std::nullopt;
}

}  // namespace

LabeledGraph::LabeledGraph(Graph graph, FiniteGroup group, std::vector<int> beta)
    : graph_(std::move(graph)), group_(std::move(group)), beta_(std::move(beta)) {
  if (auto why = labeled_violation(graph_, group_, beta_))
    throw std::invalid_argument("invalid labeled graph: " + *why);
}

LabeledGraph LabeledGraph::unchecked(Graph graph, FiniteGroup group,
                                     std::vector<int> beta) {
  LabeledGraph lg;
  lg.graph_ = std::move(graph);
  lg.group_ = std::move(group);
  lg.beta_ = std::move(beta);
  return lg;
}

VoltageGraph::VoltageGraph(Graph graph, FiniteGroup group, std::vector<int> alpha)
    : graph_(std::move(graph)), group_(std::move(group)), alpha_(std::move(alpha)) {
  if (auto why = voltage_violation(graph_, group_, alpha_))
    throw std::invalid_argument("invalid voltage graph: " + *why);
}

VoltageGraph VoltageGraph::unchecked(Graph graph, FiniteGroup group,
                                     std::vector<int> alpha) {
  VoltageGraph vg;
  vg.graph_ = std::move(graph);
  vg.group_ = std::move(group);
  vg.alpha_ = std::move(alpha);
  return vg;
}

std::optional<std::string> validate_labeled_graph(const LabeledGraph& lg) {
  return labeled_violation(lg.graph(), lg.group(), lg.beta());
}

std::optional<std::string> validate_voltage_graph(const VoltageGraph& vg) {
  return voltage_violation(vg.graph(), vg.group(), vg.alpha());
}

VoltageGraph build_voltage_graph(int vertex_count, const FiniteGroup& group,
                                 const std::vector<VoltEdgeSpec>& edges,
                                 std::vector<std::string> vertex_names) {
  std::vector<EdgeSpec> bare;
  bare.reserve(edges.size());
  std::vector<int> alpha;
  for (const VoltEdgeSpec& e : edges) {
    if (e.voltage < 0 || e.voltage >= group.order())
      throw std::invalid_argument("voltage out of range");
    bare.push_back(e.edge);
    switch (e.edge.kind) {
      case EdgeKind::Semiedge:
        if (!group.is_involution(e.voltage))
          throw std::invalid_argument(
              "semiedge voltage must be an involution (x*x = identity); " +
              group.element_name(e.voltage) + " is not one in " + group.describe());
        alpha.push_back(e.voltage);
        break;
      case EdgeKind::Loop:
      case EdgeKind::Link:
        alpha.push_back(e.voltage);
        alpha.push_back(group.inv(e.voltage));
        break;
    }
  }
  Graph g = build_graph(vertex_count, bare, std::move(vertex_names));
  return VoltageGraph(std::move(g), group, std::move(alpha));
}

LabeledGraph build_labeled_graph(int vertex_count, const FiniteGroup& group,
                                 const std::vector<EdgeSpec>& edges,
                                 std::vector<int> beta,
                                 std::vector<std::string> vertex_names) {
  Graph g = build_graph(vertex_count, edges, std::move(vertex_names));
  return LabeledGraph(std::move(g), group, std::move(beta));
}

VoltMorphism::VoltMorphism(VoltageGraph domain, VoltageGraph codomain, GraphMorphism f,
                           GroupHom h)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      f_(std::move(f)),
      h_(std::move(h)) {
  if (f_.domain() != domain_.graph() || f_.codomain() != codomain_.graph())
    throw std::invalid_argument("volt morphism: graph morphism endpoints do not match");
  if (h_.source() != domain_.group() || h_.target() != codomain_.group())
    throw std::invalid_argument("volt morphism: hom endpoints do not match");
}

VoltMorphism VoltMorphism::identity(const VoltageGraph& vg) {
  return VoltMorphism(vg, vg, GraphMorphism::identity(vg.graph()),
                      GroupHom::identity(vg.group()));
}

LabMorphism::LabMorphism(LabeledGraph domain, LabeledGraph codomain, GraphMorphism f,
                         GroupHom h)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      f_(std::move(f)),
      h_(std::move(h)) {
  if (f_.domain() != domain_.graph() || f_.codomain() != codomain_.graph())
    throw std::invalid_argument("lab morphism: graph morphism endpoints do not match");
  if (h_.source() != domain_.group() || h_.target() != codomain_.group())
    throw std::invalid_argument("lab morphism: hom endpoints do not match");
}

LabMorphism LabMorphism::identity(const LabeledGraph& lg) {
  return LabMorphism(lg, lg, GraphMorphism::identity(lg.graph()),
                     GroupHom::identity(lg.group()));
}

std::optional<std::string> validate_volt_morphism(const VoltMorphism& m) {
  if (auto why = validate_voltage_graph(m.domain())) return "domain: " + *why;
  if (auto why = validate_voltage_graph(m.codomain())) return "codomain: " + *why;
  if (auto why = validate_morphism(m.f())) return *why;
  if (auto why = validate_hom(m.h())) return *why;
  for (DartId d = 0; d < m.domain().graph().dart_count(); ++d)
    if (m.h().apply(m.domain().voltage(d)) != m.codomain().voltage(m.f().d(d)))
      return "voltage compatibility fails at dart " + std::to_string(d);
  return std::nullopt;
}

std::optional<std::string> validate_lab_morphism(const LabMorphism& m) {
  if (auto why = validate_labeled_graph(m.domain())) return "domain: " + *why;
  if (auto why = validate_labeled_graph(m.codomain())) return "codomain: " + *why;
  if (auto why = validate_morphism(m.f())) return *why;
  if (auto why = validate_hom(m.h())) return *why;
  for (VertexId v = 0; v < m.domain().graph().vertex_count(); ++v)
    if (m.h().apply(m.domain().label(v)) != m.codomain().label(m.f().v(v)))
      return "label compatibility fails at vertex " + std::to_string(v);
  return std::nullopt;
}

VoltMorphism compose(const VoltMorphism& a, const VoltMorphism& b) {
  if (a.codomain() != b.domain())
    throw std::invalid_argument("compose: voltage graphs do not match");
  return VoltMorphism(a.domain(), b.codomain(), compose(a.f(), b.f()),
                      compose(a.h(), b.h()));
}

LabMorphism compose(const LabMorphism& a, const LabMorphism& b) {
  if (a.codomain() != b.domain())
    throw std::invalid_argument("compose: labeled graphs do not match");
  return LabMorphism(a.domain(), b.codomain(), compose(a.f(), b.f()),
                     compose(a.h(), b.h()));
}

Graph k_ring(const FiniteGroup& group) {
  const int n = group.order();
  const int nd = n * n;
  std::vector<VertexId> src(nd), tgt(nd);
  std::vector<DartId> lam(nd);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const int d = u * n + v;
      src[d] = u;
      tgt[d] = v;
      lam[d] = v * n + u;
    }
  return Graph(n, std::move(src), std::move(tgt), std::move(lam));
}

GraphMorphism k_on_hom(const GroupHom& h) {
  if (auto why = validate_hom(h))
    throw std::invalid_argument("k_on_hom: not a homomorphism: " + *why);
  const int n1 = h.source().order();
  const int n2 = h.target().order();
  std::vector<VertexId> vmap(h.images().begin(), h.images().end());
  std::vector<DartId> dmap(static_cast<size_t>(n1) * n1);
  for (int u = 0; u < n1; ++u)
    for (int v = 0; v < n1; ++v)
      dmap[u * n1 + v] = h.apply(u) * n2 + h.apply(v);
  return GraphMorphism(k_ring(h.source()), k_ring(h.target()), std::move(vmap),
                       std::move(dmap));
}

Graph ell(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<VertexId> src(n, 0), tgt(n, 0);
  std::vector<DartId> lam(n);
  for (int a = 0; a < n; ++a) lam[a] = group.inv(a);
  return Graph(1, std::move(src), std::move(tgt), std::move(lam));
}

GraphMorphism ell_on_hom(const GroupHom& h) {
  if (auto why = validate_hom(h))
    throw std::invalid_argument("ell_on_hom: not a homomorphism: " + *why);
  return GraphMorphism(ell(h.source()), ell(h.target()), {0}, h.images());
}

GraphMorphism q_morphism(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<DartId> dmap(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) dmap[u * n + v] = group.op(group.inv(u), v);
  return GraphMorphism(k_ring(group), ell(group),
                       std::vector<VertexId>(n, 0), std::move(dmap));
}

GraphMorphism label_as_morphism(const LabeledGraph& lg) {
  const Graph& g = lg.graph();
  const int n = lg.group().order();
  std::vector<DartId> dmap(g.dart_count());
  for (DartId d = 0; d < g.dart_count(); ++d)
    dmap[d] = lg.label(g.src(d)) * n + lg.label(g.tgt(d));
  return GraphMorphism(g, k_ring(lg.group()), lg.beta(), std::move(dmap));
}

GraphMorphism voltage_as_morphism(const VoltageGraph& vg) {
  return GraphMorphism(vg.graph(), ell(vg.group()),
                       std::vector<VertexId>(vg.graph().vertex_count(), 0),
                       vg.alpha());
}

VoltageGraph functor_L(const LabeledGraph& lg) {
  const Graph& g = lg.graph();
  const FiniteGroup& grp = lg.group();
  std::vector<int> alpha(g.dart_count());
  for (DartId d = 0; d < g.dart_count(); ++d)
    alpha[d] = grp.op(grp.inv(lg.label(g.src(d))), lg.label(g.tgt(d)));
  return VoltageGraph(g, grp, std::move(alpha));
}

VoltMorphism functor_L_on_morphism(const LabMorphism& m) {
  if (auto why = validate_lab_morphism(m))
    throw std::invalid_argument("functor_L_on_morphism: invalid morphism: " + *why);
  return VoltMorphism(functor_L(m.domain()), functor_L(m.codomain()), m.f(), m.h());
}

RImage functor_R(const VoltageGraph& vg) {
  const FiniteGroup& grp = vg.group();
  PullbackResult pb = pullback(voltage_as_morphism(vg), q_morphism(grp));

  const int nv = pb.apex.vertex_count();
  std::vector<int> beta(nv);
  std::vector<std::string> names(nv);
  for (int i = 0; i < nv; ++i) {
    const auto [v, x] = pb.vertex_index[i];
    beta[i] = x;
    names[i] = vg.graph().vertex_name(v) + "@" + grp.element_name(x);
  }
  Graph named = pb.apex.with_vertex_names(std::move(names));
  GraphMorphism projection(named, vg.graph(), pb.proj_left.vmap(), pb.proj_left.dmap());
  LabeledGraph labeled(std::move(named), grp, std::move(beta));
  return RImage{std::move(labeled), std::move(projection), std::move(pb)};
}

LabMorphism functor_R_on_morphism(const VoltMorphism& m) {
  if (auto why = validate_volt_morphism(m))
    throw std::invalid_argument("functor_R_on_morphism: invalid morphism: " + *why);
  RImage r1 = functor_R(m.domain());
  RImage r2 = functor_R(m.codomain());
  const int n1 = m.domain().group().order();
  const int n2 = m.codomain().group().order();
  const GroupHom& h = m.h();

  std::vector<VertexId> vmap(r1.labeled.graph().vertex_count());
  for (size_t i = 0; i < r1.pb.vertex_index.size(); ++i) {
    const auto [v, x] = r1.pb.vertex_index[i];
    auto pos = r2.pb.find_vertex(m.f().v(v), h.apply(x));
    if (!pos) throw std::logic_error("functor_R_on_morphism: missing vertex pair");
    vmap[i] = *pos;
  }
  std::vector<DartId> dmap(r1.labeled.graph().dart_count());
  for (size_t i = 0; i < r1.pb.dart_index.size(); ++i) {
    const auto [d, kd] = r1.pb.dart_index[i];
    const int x1 = kd / n1;
    const int x2 = kd % n1;
    auto pos = r2.pb.find_dart(m.f().d(d), h.apply(x1) * n2 + h.apply(x2));
    if (!pos) throw std::logic_error("functor_R_on_morphism: missing dart pair");
    dmap[i] = *pos;
  }
  GraphMorphism u(r1.labeled.graph(), r2.labeled.graph(), std::move(vmap),
                  std::move(dmap));
  return LabMorphism(std::move(r1.labeled), std::move(r2.labeled), std::move(u), h);
}

VoltageGraph derived(const VoltageGraph& vg) {
  const Graph& g = vg.graph();
  const FiniteGroup& grp = vg.group();
  const int n = grp.order();
  const int nv = g.vertex_count() * n;
  const int nd = g.dart_count() * n;

  std::vector<VertexId> src(nd), tgt(nd);
  std::vector<DartId> lam(nd);
  std::vector<int> alpha(nd);
  for (DartId d = 0; d < g.dart_count(); ++d)
    for (int x = 0; x < n; ++x) {
      const int i = d * n + x;
      const int carried = grp.op(x, vg.voltage(d));
      src[i] = g.src(d) * n + x;
      tgt[i] = g.tgt(d) * n + carried;
      lam[i] = g.reverse(d) * n + carried;
      alpha[i] = vg.voltage(d);
    }
  std::vector<std::string> names(nv);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (int x = 0; x < n; ++x)
      names[v * n + x] = g.vertex_name(v) + "@" + grp.element_name(x);

  Graph lift(nv, std::move(src), std::move(tgt), std::move(lam), std::move(names));
  return VoltageGraph(std::move(lift), grp, std::move(alpha));
}

GraphMorphism derived_projection(const VoltageGraph& vg) {
  const VoltageGraph lift = derived(vg);
  const int n = vg.group().order();
  std::vector<VertexId> vmap(lift.graph().vertex_count());
  for (size_t i = 0; i < vmap.size(); ++i) vmap[i] = static_cast<int>(i) / n;
  std::vector<DartId> dmap(lift.graph().dart_count());
  for (size_t i = 0; i < dmap.size(); ++i) dmap[i] = static_cast<int>(i) / n;
  return GraphMorphism(lift.graph(), vg.graph(), std::move(vmap), std::move(dmap));
}

VoltMorphism counit(const VoltageGraph& vg, const RImage& r) {
  VoltageGraph lr = functor_L(r.labeled);
  return VoltMorphism(std::move(lr), vg, r.projection, GroupHom::identity(vg.group()));
}

VoltMorphism counit(const VoltageGraph& vg) { return counit(vg, functor_R(vg)); }

LabMorphism universal_factorization(const LabeledGraph& lg, const VoltageGraph& vg,
                                    const VoltMorphism& m) {
  if (auto why = validate_volt_morphism(m))
    throw std::invalid_argument("universal_factorization: invalid morphism: " + *why);
  if (m.domain() != functor_L(lg))
    throw std::invalid_argument("universal_factorization: morphism is not from L(lg)");
  if (m.codomain() != vg)
    throw std::invalid_argument("universal_factorization: morphism is not into vg");

  const GroupHom& h = m.h();
  const GraphMorphism& f = m.f();
  RImage r = functor_R(vg);
  const Graph& g1 = lg.graph();
  const int n = vg.group().order();

  // Explicit pointwise formula unwound from the two pullback triangles:
  // the k_ring component of u is h after the labels.
  std::vector<VertexId> vmap(g1.vertex_count());
  for (VertexId v = 0; v < g1.vertex_count(); ++v) {
    auto pos = r.pb.find_vertex(f.v(v), h.apply(lg.label(v)));
    if (!pos) throw std::logic_error("universal_factorization: missing vertex pair");
    vmap[v] = *pos;
  }
  std::vector<DartId> dmap(g1.dart_count());
  for (DartId d = 0; d < g1.dart_count(); ++d) {
    const int x1 = h.apply(lg.label(g1.src(d)));
    const int x2 = h.apply(lg.label(g1.tgt(d)));
    auto pos = r.pb.find_dart(f.d(d), x1 * n + x2);
    if (!pos) throw std::logic_error("universal_factorization: missing dart pair");
    dmap[d] = *pos;
  }
  GraphMorphism u(g1, r.labeled.graph(), std::move(vmap), std::move(dmap));

  // Cross-check against the generic pullback mediator; disagreement
  // would mean an indexing bug.
  GraphMorphism to_right = compose(label_as_morphism(lg), k_on_hom(h));
  auto mediated = r.pb.mediate(f, to_right);
  if (!mediated)
    throw std::logic_error("universal_factorization: outer square does not commute");
  if (mediated->vmap() != u.vmap() || mediated->dmap() != u.dmap())
    throw std::logic_error("universal_factorization: explicit formula disagrees with "
                           "the pullback mediator");

  return LabMorphism(lg, std::move(r.labeled), std::move(u), h);
}

VoltMorphism iso_j(const VoltageGraph& vg, const RImage& r) {
  VoltageGraph lr = functor_L(r.labeled);
  VoltageGraph lift = derived(vg);
  const int n = vg.group().order();

  std::vector<VertexId> vmap(lr.graph().vertex_count());
  for (size_t i = 0; i < vmap.size(); ++i) {
    const auto [v, x] = r.pb.vertex_index[i];
    vmap[i] = v * n + x;
  }
  std::vector<DartId> dmap(lr.graph().dart_count());
  for (size_t i = 0; i < dmap.size(); ++i) {
    const auto [d, kd] = r.pb.dart_index[i];
    const int x1 = kd / n;  // drop x2; it is x1 * alpha(d)
    dmap[i] = d * n + x1;
  }
  GraphMorphism j(lr.graph(), lift.graph(), std::move(vmap), std::move(dmap));
  return VoltMorphism(std::move(lr), std::move(lift), std::move(j),
                      GroupHom::identity(vg.group()));
}

VoltMorphism iso_j(const VoltageGraph& vg) { return iso_j(vg, functor_R(vg)); }

VoltageGraph volt_product(const VoltageGraph& v1, const VoltageGraph& v2) {
  PullbackResult pr = product(v1.graph(), v2.graph());
  FiniteGroup grp = direct_product(v1.group(), v2.group());
  std::vector<int> alpha(pr.apex.dart_count());
  for (size_t i = 0; i < alpha.size(); ++i) {
    const auto [d1, d2] = pr.dart_index[i];
    alpha[i] = grp.pair_index(v1.voltage(d1), v2.voltage(d2));
  }
  return VoltageGraph(std::move(pr.apex), std::move(grp), std::move(alpha));
}

LabeledGraph lab_product(const LabeledGraph& l1, const LabeledGraph& l2) {
  PullbackResult pr = product(l1.graph(), l2.graph());
  FiniteGroup grp = direct_product(l1.group(), l2.group());
  std::vector<int> beta(pr.apex.vertex_count());
  for (size_t i = 0; i < beta.size(); ++i) {
    const auto [v1, v2] = pr.vertex_index[i];
    beta[i] = grp.pair_index(l1.label(v1), l2.label(v2));
  }
  return LabeledGraph(std::move(pr.apex), std::move(grp), std::move(beta));
}

GraphMorphism k_ring_product_iso(const FiniteGroup& g1, const FiniteGroup& g2) {
  const FiniteGroup p = direct_product(g1, g2);
  const int n1 = g1.order();
  const int n2 = g2.order();
  const int np = p.order();
  PullbackResult pr = product(k_ring(g1), k_ring(g2));

  // Vertex (a, b) of k_ring(p) is the pair index a * n2 + b, which is
  // exactly the product's lexicographic vertex index.
  std::vector<VertexId> vmap(np);
  std::iota(vmap.begin(), vmap.end(), 0);
  std::vector<DartId> dmap(static_cast<size_t>(np) * np);
  for (int p1 = 0; p1 < np; ++p1)
    for (int p2 = 0; p2 < np; ++p2) {
      const auto [a1, b1] = p.unpair_index(p1);
      const auto [a2, b2] = p.unpair_index(p2);
      const int left_dart = a1 * n1 + a2;    // dart (a1, a2) of k_ring(g1)
      const int right_dart = b1 * n2 + b2;   // dart (b1, b2) of k_ring(g2)
      dmap[p1 * np + p2] = left_dart * (n2 * n2) + right_dart;
    }
  return GraphMorphism(k_ring(p), pr.apex, std::move(vmap), std::move(dmap));
}

GraphMorphism ell_product_iso(const FiniteGroup& g1, const FiniteGroup& g2) {
  const FiniteGroup p = direct_product(g1, g2);
  const int n2 = g2.order();
  PullbackResult pr = product(ell(g1), ell(g2));
  std::vector<DartId> dmap(p.order());
  for (int x = 0; x < p.order(); ++x) {
    const auto [a, b] = p.unpair_index(x);
    dmap[x] = a * n2 + b;
  }
  return GraphMorphism(ell(p), pr.apex, {0}, std::move(dmap));
}

namespace {

void check_enum_caps(const Graph& dom, const FiniteGroup& grp1, const FiniteGroup& grp2,
                     const EnumCaps& caps) {
  if (dom.vertex_count() > caps.max_domain_vertices ||
      dom.dart_count() > caps.max_domain_darts ||
      grp1.order() > caps.max_group_order || grp2.order() > caps.max_group_order)
    throw std::invalid_argument("morphism enumeration caps exceeded");
}

}  // namespace

std::vector<LabMorphism> enumerate_lab_morphisms(const LabeledGraph& lg1,
                                                 const LabeledGraph& lg2,
                                                 const EnumCaps& caps) {
  check_enum_caps(lg1.graph(), lg1.group(), lg2.group(), caps);
  std::vector<LabMorphism> out;
  for (const GroupHom& h : enumerate_homs(lg1.group(), lg2.group())) {
    auto vertex_ok = [&](VertexId v, VertexId w) {
      return lg2.label(w) == h.apply(lg1.label(v));
    };
    for (GraphMorphism& f : detail::enumerate_morphisms_filtered(
             lg1.graph(), lg2.graph(), vertex_ok, nullptr))
      out.emplace_back(lg1, lg2, std::move(f), h);
  }
  return out;
}

std::vector<VoltMorphism> enumerate_volt_morphisms(const VoltageGraph& vg1,
                                                   const VoltageGraph& vg2,
                                                   const EnumCaps& caps) {
  check_enum_caps(vg1.graph(), vg1.group(), vg2.group(), caps);
  std::vector<VoltMorphism> out;
  for (const GroupHom& h : enumerate_homs(vg1.group(), vg2.group())) {
    auto dart_ok = [&](DartId d, DartId e) {
      return vg2.voltage(e) == h.apply(vg1.voltage(d));
    };
    for (GraphMorphism& f : detail::enumerate_morphisms_filtered(
             vg1.graph(), vg2.graph(), nullptr, dart_ok))
      out.emplace_back(vg1, vg2, std::move(f), h);
  }
  return out;
}

}  // namespace voltlab
