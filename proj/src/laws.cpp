#include "voltlab/laws.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "voltlab/io.hpp"

namespace voltlab::laws {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below: empty range");
  const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x = next();
  while (x < min) x = next();
  return x % n;
}

std::vector<FiniteGroup> default_palette() {
  std::vector<FiniteGroup> palette;
  for (int n = 1; n <= 6; ++n) palette.push_back(FiniteGroup::cyclic(n));
  palette.push_back(direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  palette.push_back(direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)));
  return palette;
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, GeneratorConfig config)
    : rng_(seed), cfg_(std::move(config)) {
  if (cfg_.group_palette.empty())
    throw std::invalid_argument("instance generator: group palette is empty");
  if (cfg_.max_vertices < 1)
    throw std::invalid_argument("instance generator: need at least one vertex");
  if (cfg_.max_edges < 0 || cfg_.weight_link < 0 || cfg_.weight_loop < 0 ||
      cfg_.weight_semiedge < 0)
    throw std::invalid_argument("instance generator: negative configuration value");
  if (cfg_.weight_link + cfg_.weight_loop + cfg_.weight_semiedge == 0)
    throw std::invalid_argument("instance generator: edge-kind weights sum to zero");
}

const FiniteGroup& InstanceGenerator::pick_group() {
  return cfg_.group_palette[rng_.below(cfg_.group_palette.size())];
}

std::pair<int, std::vector<EdgeSpec>> InstanceGenerator::structure() {
  const int n = 1 + rng_.below_int(cfg_.max_vertices);
  const int edge_count = rng_.below_int(cfg_.max_edges + 1);
  std::vector<EdgeSpec> specs;
  specs.reserve(edge_count);
  for (int i = 0; i < edge_count; ++i) {
    const int wl = n > 1 ? cfg_.weight_link : 0;
    const int total = wl + cfg_.weight_loop + cfg_.weight_semiedge;
    if (total == 0) break;  // only links allowed but just one vertex
    const int r = rng_.below_int(total);
    if (r < wl) {
      const VertexId u = rng_.below_int(n);
      VertexId v = rng_.below_int(n - 1);
      if (v >= u) ++v;
      specs.push_back(EdgeSpec::link(u, v));
    } else if (r < wl + cfg_.weight_loop) {
      specs.push_back(EdgeSpec::loop(rng_.below_int(n)));
    } else {
      specs.push_back(EdgeSpec::semiedge(rng_.below_int(n)));
    }
  }
  return {n, std::move(specs)};
}

Graph InstanceGenerator::graph() {
  auto [n, specs] = structure();
  return build_graph(n, specs);
}

VoltageGraph InstanceGenerator::voltage_graph() {
  const FiniteGroup group = pick_group();
  auto [n, specs] = structure();
  std::vector<int> involutions;
  for (int a = 0; a < group.order(); ++a)
    if (group.is_involution(a)) involutions.push_back(a);
  std::vector<VoltEdgeSpec> volted;
  volted.reserve(specs.size());
  for (const EdgeSpec& e : specs) {
    int voltage = e.kind == EdgeKind::Semiedge
                      ? involutions[rng_.below(involutions.size())]
                      : rng_.below_int(group.order());
    volted.push_back({e, voltage});
  }
  return build_voltage_graph(n, group, volted);
}

LabeledGraph InstanceGenerator::labeled_graph() {
  const FiniteGroup group = pick_group();
  auto [n, specs] = structure();
  std::vector<int> beta(n);
  for (int v = 0; v < n; ++v) beta[v] = rng_.below_int(group.order());
  return build_labeled_graph(n, group, specs, std::move(beta));
}

const char* to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::FlipVoltage: return "flip-voltage";
    case Mutation::BreakLambda: return "break-lambda";
    case Mutation::NonHomomorphism: return "non-homomorphism";
    case Mutation::WrongPullbackFilter: return "wrong-pullback-filter";
    case Mutation::DropCounitComponent: return "drop-counit-component";
  }
  return "?";
}

std::optional<Mutation> mutation_from_string(const std::string& name) {
  for (Mutation m : {Mutation::None, Mutation::FlipVoltage, Mutation::BreakLambda,
                     Mutation::NonHomomorphism, Mutation::WrongPullbackFilter,
                     Mutation::DropCounitComponent})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

namespace {

struct LawFailure {
  std::string counterexample;
};

void require(bool ok, const std::function<std::string()>& counterexample) {
  if (!ok) throw LawFailure{counterexample()};
}

std::uint64_t fnv1a(const char* s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t sub_seed(std::uint64_t seed, const char* law) { return seed ^ fnv1a(law); }

std::string palette_names(const GeneratorConfig& cfg) {
  std::string out;
  for (size_t i = 0; i < cfg.group_palette.size(); ++i) {
    if (i) out += ",";
    out += cfg.group_palette[i].describe();
  }
  return out;
}

std::string show_ints(const std::vector<int>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string show_graph_morphism(const GraphMorphism& f) {
  return "vmap=" + show_ints(f.vmap()) + " dmap=" + show_ints(f.dmap());
}

// Raw structure dump; works on broken instances where the document
// serialization would lose information.
std::string show_vg(const VoltageGraph& vg) {
  std::string out = "group " + vg.group().describe() +
                    " vertices=" + std::to_string(vg.graph().vertex_count()) +
                    "\nsrc=" + show_ints(vg.graph().src_map()) +
                    " tgt=" + show_ints(vg.graph().tgt_map()) +
                    " lambda=" + show_ints(vg.graph().lambda_map()) +
                    " alpha=" + show_ints(vg.alpha()) + "\ndocument:\n" +
                    io::serialize(vg);
  return out;
}

std::string show_lg(const LabeledGraph& lg) {
  return "document:\n" + io::serialize(lg);
}

// Pointwise equality of composites, avoiding morphism allocation:
// does left2(left1(x)) == right2(right1(x)) hold on both sorts?
bool squares_commute(const GraphMorphism& left1, const GraphMorphism& left2,
                     const GraphMorphism& right1, const GraphMorphism& right2) {
  const Graph& dom = left1.domain();
  for (VertexId v = 0; v < dom.vertex_count(); ++v)
    if (left2.v(left1.v(v)) != right2.v(right1.v(v))) return false;
  for (DartId d = 0; d < dom.dart_count(); ++d)
    if (left2.d(left1.d(d)) != right2.d(right1.d(d))) return false;
  return true;
}

// u followed by proj equals leg, pointwise.
bool triangle_commutes(const GraphMorphism& u, const GraphMorphism& proj,
                       const GraphMorphism& leg) {
  const Graph& dom = u.domain();
  for (VertexId v = 0; v < dom.vertex_count(); ++v)
    if (proj.v(u.v(v)) != leg.v(v)) return false;
  for (DartId d = 0; d < dom.dart_count(); ++d)
    if (proj.d(u.d(d)) != leg.d(d)) return false;
  return true;
}

// Deliberately wrong pullback for mutation testing: vertices filtered as
// usual, darts keep exactly the mismatching pairs. Structure maps fall
// back to 0 when a pair is missing so construction stays total.
PullbackResult wrong_pullback(const GraphMorphism& f1, const GraphMorphism& f2) {
  const Graph& g1 = f1.domain();
  const Graph& g2 = f2.domain();
  std::vector<std::pair<VertexId, VertexId>> vpairs;
  for (VertexId a = 0; a < g1.vertex_count(); ++a)
    for (VertexId b = 0; b < g2.vertex_count(); ++b)
      if (f1.v(a) == f2.v(b)) vpairs.emplace_back(a, b);
  std::vector<std::pair<DartId, DartId>> dpairs;
  for (DartId a = 0; a < g1.dart_count(); ++a)
    for (DartId b = 0; b < g2.dart_count(); ++b)
      if (f1.d(a) != f2.d(b)) dpairs.emplace_back(a, b);

  auto vertex_at = [&](VertexId a, VertexId b) -> VertexId {
    auto it = std::lower_bound(vpairs.begin(), vpairs.end(), std::make_pair(a, b));
    if (it == vpairs.end() || *it != std::make_pair(a, b)) return 0;
    return static_cast<VertexId>(it - vpairs.begin());
  };
  auto dart_at = [&](DartId a, DartId b) -> DartId {
    auto it = std::lower_bound(dpairs.begin(), dpairs.end(), std::make_pair(a, b));
    if (it == dpairs.end() || *it != std::make_pair(a, b)) return 0;
    return static_cast<DartId>(it - dpairs.begin());
  };

  const int nv = static_cast<int>(vpairs.size());
  const int nd = static_cast<int>(dpairs.size());
  std::vector<VertexId> src(nd), tgt(nd);
  std::vector<DartId> lam(nd);
  std::vector<VertexId> pv1(nv), pv2(nv);
  std::vector<DartId> pd1(nd), pd2(nd);
  for (int i = 0; i < nv; ++i) {
    pv1[i] = vpairs[i].first;
    pv2[i] = vpairs[i].second;
  }
  for (int i = 0; i < nd; ++i) {
    const auto [a, b] = dpairs[i];
    src[i] = vertex_at(g1.src(a), g2.src(b));
    tgt[i] = vertex_at(g1.tgt(a), g2.tgt(b));
    lam[i] = dart_at(g1.reverse(a), g2.reverse(b));
    pd1[i] = a;
    pd2[i] = b;
  }
  Graph apex = Graph::unchecked(nv, std::move(src), std::move(tgt), std::move(lam));
  GraphMorphism proj_left(apex, g1, std::move(pv1), std::move(pd1));
  GraphMorphism proj_right(apex, g2, std::move(pv2), std::move(pd2));
  return PullbackResult{std::move(apex), std::move(proj_left), std::move(proj_right),
                        std::move(vpairs), std::move(dpairs)};
}

RImage wrong_functor_R(const VoltageGraph& vg) {
  const FiniteGroup& grp = vg.group();
  PullbackResult pb = wrong_pullback(voltage_as_morphism(vg), q_morphism(grp));
  std::vector<int> beta(pb.apex.vertex_count());
  for (size_t i = 0; i < beta.size(); ++i) beta[i] = pb.vertex_index[i].second;
  GraphMorphism projection = pb.proj_left;
  LabeledGraph labeled = LabeledGraph::unchecked(pb.apex, grp, std::move(beta));
  return RImage{std::move(labeled), std::move(projection), std::move(pb)};
}

// Context threading the active mutation through sampling and the
// constructions the checks exercise.
struct LawCtx {
  const CheckConfig& cfg;
  SplitMix64 rng;
  std::string counters;

  explicit LawCtx(const CheckConfig& c, const char* law)
      : cfg(c), rng(sub_seed(c.seed, law) + 1) {}

  VoltageGraph sample_vg(InstanceGenerator& gen) const {
    VoltageGraph vg = gen.voltage_graph();
    if (cfg.mutation != Mutation::FlipVoltage && cfg.mutation != Mutation::BreakLambda)
      return vg;
    const Graph& g = vg.graph();
    DartId victim = -1;
    for (DartId d = 0; d < g.dart_count() && victim < 0; ++d)
      if (g.reverse(d) != d) victim = d;
    if (victim < 0) return vg;  // no non-semiedge dart to corrupt
    if (cfg.mutation == Mutation::FlipVoltage) {
      if (vg.group().order() < 2) return vg;
      std::vector<int> alpha = vg.alpha();
      alpha[victim] = (alpha[victim] + 1) % vg.group().order();
      return VoltageGraph::unchecked(g, vg.group(), std::move(alpha));
    }
    std::vector<DartId> lam = g.lambda_map();
    lam[victim] = victim;
    Graph broken = Graph::unchecked(g.vertex_count(), g.src_map(), g.tgt_map(),
                                    std::move(lam), g.raw_vertex_names());
    return VoltageGraph::unchecked(std::move(broken), vg.group(), vg.alpha());
  }

  RImage r_of(const VoltageGraph& vg) const {
    if (cfg.mutation == Mutation::WrongPullbackFilter) return wrong_functor_R(vg);
    return functor_R(vg);
  }

  VoltMorphism counit_of(const VoltageGraph& vg) const {
    VoltMorphism eps = counit(vg);
    if (cfg.mutation != Mutation::DropCounitComponent) return eps;
    return VoltMorphism(eps.domain(), eps.codomain(), eps.f(),
                        GroupHom::trivial(vg.group(), vg.group()));
  }

  PullbackResult pullback_of(const GraphMorphism& f1, const GraphMorphism& f2) const {
    if (cfg.mutation == Mutation::WrongPullbackFilter) return wrong_pullback(f1, f2);
    return pullback(f1, f2);
  }

  std::string replay_hint() const {
    std::string hint = "replay: laws --seed " + std::to_string(cfg.seed) +
                       " --iterations " + std::to_string(cfg.iterations);
    if (cfg.mutation != Mutation::None)
      hint += std::string(" --mutate ") + to_string(cfg.mutation);
    return hint;
  }
};

GeneratorConfig clamp_for_enumeration(GeneratorConfig gen, const EnumCaps& caps) {
  gen.max_vertices = std::min(gen.max_vertices, caps.max_domain_vertices);
  gen.max_edges = std::min(gen.max_edges, caps.max_domain_darts / 2);
  std::vector<FiniteGroup> palette;
  for (const FiniteGroup& g : gen.group_palette)
    if (g.order() <= caps.max_group_order) palette.push_back(g);
  if (palette.empty())
    throw std::invalid_argument("no palette group fits the enumeration caps");
  gen.group_palette = std::move(palette);
  return gen;
}

LawReport run_law(const char* name, const CheckConfig& cfg,
                  const std::function<void(LawCtx&)>& body) {
  LawReport report;
  report.law = name;
  report.seed = cfg.seed;
  LawCtx ctx(cfg, name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(ctx);
    report.pass = true;
  } catch (const LawFailure& failure) {
    report.pass = false;
    report.counterexample = ctx.replay_hint() + "\n" + failure.counterexample;
  } catch (const std::exception& e) {
    report.pass = false;
    report.counterexample =
        ctx.replay_hint() + "\nunexpected error: " + std::string(e.what());
  }
  report.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  report.instance = "seed=" + std::to_string(cfg.seed) +
                    " iterations=" + std::to_string(cfg.iterations) +
                    " max_vertices=" + std::to_string(cfg.gen.max_vertices) +
                    " max_edges=" + std::to_string(cfg.gen.max_edges) +
                    " palette=" + palette_names(cfg.gen) + ctx.counters;
  return report;
}

const std::vector<Graph>& probe_graphs() {
  static const std::vector<Graph> probes = [] {
    std::vector<Graph> out;
    out.push_back(build_graph(1, {}));
    out.push_back(build_graph(1, {EdgeSpec::semiedge(0)}));
    out.push_back(build_graph(1, {EdgeSpec::loop(0)}));
    out.push_back(build_graph(2, {EdgeSpec::link(0, 1)}));
    out.push_back(build_graph(2, {EdgeSpec::link(0, 1), EdgeSpec::semiedge(1)}));
    return out;
  }();
  return probes;
}

}  // namespace

LawReport check_pullback_universality(const CheckConfig& config) {
  return run_law("pullback-universality", config, [&](LawCtx& ctx) {
    GeneratorConfig small = config.gen;
    small.max_vertices = std::min(small.max_vertices, 3);
    small.max_edges = std::min(small.max_edges, 3);
    InstanceGenerator gen(sub_seed(config.seed, "pullback-universality"), small);
    const MorphismEnumCaps caps{4, 8};

    int cospans = 0;
    int squares = 0;
    for (int it = 0; it < config.iterations; ++it) {
      const Graph h = gen.graph();
      const Graph g1 = gen.graph();
      const Graph g2 = gen.graph();
      const auto f1s = enumerate_graph_morphisms(g1, h, caps);
      const auto f2s = enumerate_graph_morphisms(g2, h, caps);
      if (f1s.empty() || f2s.empty()) continue;
      const GraphMorphism& f1 = f1s[ctx.rng.below(f1s.size())];
      const GraphMorphism& f2 = f2s[ctx.rng.below(f2s.size())];
      ++cospans;

      const PullbackResult pb = ctx.pullback_of(f1, f2);
      auto describe = [&](const std::string& what) {
        return [&, what]() {
          return what + "\ncospan legs:\n  f1 " + show_graph_morphism(f1) +
                 "\n  f2 " + show_graph_morphism(f2);
        };
      };
      require(!validate_graph(pb.apex).has_value(), describe("pullback apex violates the graph axioms"));
      require(!validate_morphism(pb.proj_left).has_value() &&
                  !validate_morphism(pb.proj_right).has_value(),
              describe("pullback projection is not a morphism"));
      require(squares_commute(pb.proj_left, f1, pb.proj_right, f2),
              describe("pullback square does not commute"));

      for (const Graph& probe : probe_graphs()) {
        const auto legs_left = enumerate_graph_morphisms(probe, g1, caps);
        const auto legs_right = enumerate_graph_morphisms(probe, g2, caps);
        const auto into_apex = enumerate_graph_morphisms(probe, pb.apex, caps);
        for (const GraphMorphism& vx : legs_left)
          for (const GraphMorphism& vb : legs_right) {
            if (!squares_commute(vx, f1, vb, f2)) continue;
            ++squares;
            int count = 0;
            const GraphMorphism* unique = nullptr;
            for (const GraphMorphism& u : into_apex)
              if (triangle_commutes(u, pb.proj_left, vx) &&
                  triangle_commutes(u, pb.proj_right, vb)) {
                ++count;
                unique = &u;
              }
            require(count == 1, [&]() {
              return "expected exactly one mediating morphism, found " +
                     std::to_string(count) + "\nlegs:\n  vx " +
                     show_graph_morphism(vx) + "\n  vb " + show_graph_morphism(vb) +
                     "\ncospan legs:\n  f1 " + show_graph_morphism(f1) + "\n  f2 " +
                     show_graph_morphism(f2);
            });
            const auto computed = pb.mediate(vx, vb);
            require(computed.has_value() && *computed == *unique, [&]() {
              return "computed mediator disagrees with the exhaustive search\nlegs:"
                     "\n  vx " +
                     show_graph_morphism(vx) + "\n  vb " + show_graph_morphism(vb);
            });
          }
      }
    }
    require(cospans > 0 && squares > 0, []() {
      return std::string("no commuting squares were exercised; configuration too "
                         "restrictive");
    });
    ctx.counters =
        " cospans=" + std::to_string(cospans) + " squares=" + std::to_string(squares);
  });
}

LawReport check_naturality_q(const CheckConfig& config) {
  return run_law("naturality-q", config, [&](LawCtx& ctx) {
    int homs_checked = 0;
    for (const FiniteGroup& g1 : config.gen.group_palette) {
      for (const FiniteGroup& g2 : config.gen.group_palette) {
        if (g1.order() > 8 || g2.order() > 12) continue;
        for (const GroupHom& h : enumerate_homs(g1, g2)) {
          const GraphMorphism lhs = compose(q_morphism(g1), ell_on_hom(h));
          const GraphMorphism rhs = compose(k_on_hom(h), q_morphism(g2));
          require(lhs == rhs, [&]() {
            return "naturality square fails for h: " + g1.describe() + " -> " +
                   g2.describe() + " with images " + show_ints(h.images());
          });
          ++homs_checked;
        }
      }
    }

    if (config.mutation == Mutation::NonHomomorphism) {
      // Inject a constant non-identity map and run it through the same
      // square; the raw graph morphisms are built directly since
      // k_on_hom/ell_on_hom reject non-homs.
      for (const FiniteGroup& g1 : config.gen.group_palette) {
        for (const FiniteGroup& g2 : config.gen.group_palette) {
          if (g2.order() < 2 || g1.order() > 8 || g2.order() > 12) continue;
          std::vector<int> images(g1.order(), 1);
          const int n1 = g1.order();
          const int n2 = g2.order();
          std::vector<DartId> kdmap(static_cast<size_t>(n1) * n1);
          for (int u = 0; u < n1; ++u)
            for (int v = 0; v < n1; ++v)
              kdmap[u * n1 + v] = images[u] * n2 + images[v];
          const GraphMorphism k_raw(k_ring(g1), k_ring(g2),
                                    std::vector<VertexId>(images.begin(), images.end()),
                                    std::move(kdmap));
          const GraphMorphism ell_raw(ell(g1), ell(g2), {0}, images);
          const GraphMorphism lhs = compose(q_morphism(g1), ell_raw);
          const GraphMorphism rhs = compose(k_raw, q_morphism(g2));
          require(lhs == rhs, [&]() {
            return "naturality square fails for the injected map " + g1.describe() +
                   " -> " + g2.describe() + " with images " + show_ints(images) +
                   " (constant non-identity; not a homomorphism)";
          });
          ++homs_checked;
        }
      }
    }
    ctx.counters = " homs=" + std::to_string(homs_checked);
  });
}

LawReport check_counit_universal(const CheckConfig& config) {
  return run_law("counit-universality", config, [&](LawCtx& ctx) {
    const GeneratorConfig capped = clamp_for_enumeration(config.gen, config.enum_caps);
    InstanceGenerator gen(sub_seed(config.seed, "counit-universality"), capped);

    int triples = 0;
    int pairs = 0;
    for (int it = 0; it < config.iterations; ++it) {
      const LabeledGraph lg = gen.labeled_graph();
      const VoltageGraph vg = ctx.sample_vg(gen);
      const VoltageGraph lift_domain = functor_L(lg);
      const auto morphisms = enumerate_volt_morphisms(lift_domain, vg, config.enum_caps);
      const RImage r = ctx.r_of(vg);
      const auto candidates = enumerate_lab_morphisms(lg, r.labeled, config.enum_caps);
      ++pairs;

      require(morphisms.size() == candidates.size(), [&]() {
        return "hom-set bijection fails: |Volt(L(X),Y)| = " +
               std::to_string(morphisms.size()) + " but |Lab(X,R(Y))| = " +
               std::to_string(candidates.size()) + "\nX:\n" + show_lg(lg) + "Y:\n" +
               show_vg(vg);
      });

      const VoltMorphism eps = ctx.counit_of(vg);
      const VoltageGraph lr = functor_L(r.labeled);
      const bool composable = lr == eps.domain();

      // Triangle eps . L(cand) == m, checked pointwise; L keeps the
      // underlying pair, so cand's own maps are compared through eps.
      auto factors = [&](const LabMorphism& cand, const VoltMorphism& m) {
        if (!composable) return false;
        for (int x = 0; x < cand.h().source().order(); ++x)
          if (eps.h().apply(cand.h().apply(x)) != m.h().apply(x)) return false;
        return triangle_commutes(cand.f(), eps.f(), m.f());
      };

      for (const VoltMorphism& m : morphisms) {
        ++triples;
        const LabMorphism u = universal_factorization(lg, vg, m);
        require(!validate_lab_morphism(u).has_value(), [&]() {
          return "factorization is not a valid labeled-graph morphism\nmorphism f: " +
                 show_graph_morphism(m.f()) + "\nX:\n" + show_lg(lg) + "Y:\n" +
                 show_vg(vg);
        });
        int count = 0;
        const LabMorphism* unique = nullptr;
        for (const LabMorphism& cand : candidates)
          if (factors(cand, m)) {
            ++count;
            unique = &cand;
          }
        require(count == 1, [&]() {
          return "expected exactly one commuting factorization, found " +
                 std::to_string(count) + "\nmorphism f: " + show_graph_morphism(m.f()) +
                 " h images " + show_ints(m.h().images()) + "\nX:\n" + show_lg(lg) +
                 "Y:\n" + show_vg(vg);
        });
        require(unique->f() == u.f() && unique->h() == u.h(), [&]() {
          return "universal_factorization differs from the unique commuting "
                 "factorization\nreturned u: " +
                 show_graph_morphism(u.f()) + "\nunique u: " +
                 show_graph_morphism(unique->f()) + "\nX:\n" + show_lg(lg) + "Y:\n" +
                 show_vg(vg);
        });
      }
    }
    require(triples > 0, []() {
      return std::string("no factorization triples were exercised; configuration too "
                         "restrictive");
    });
    ctx.counters =
        " pairs=" + std::to_string(pairs) + " triples=" + std::to_string(triples);
  });
}

LawReport check_derived_iso(const CheckConfig& config) {
  return run_law("derived-iso", config, [&](LawCtx& ctx) {
    InstanceGenerator gen(sub_seed(config.seed, "derived-iso"), config.gen);
    int instances = 0;
    for (int it = 0; it < config.iterations; ++it) {
      const VoltageGraph vg = ctx.sample_vg(gen);
      ++instances;
      require(!validate_voltage_graph(vg).has_value(), [&]() {
        return "generated instance fails validation: " + *validate_voltage_graph(vg) +
               "\n" + show_vg(vg);
      });
      const VoltageGraph lift = derived(vg);
      require(!validate_voltage_graph(lift).has_value(), [&]() {
        return "derived graph fails validation: " + *validate_voltage_graph(lift) +
               "\nbase:\n" + show_vg(vg);
      });
      const int order = vg.group().order();
      require(lift.graph().vertex_count() == vg.graph().vertex_count() * order &&
                  lift.graph().dart_count() == vg.graph().dart_count() * order,
              [&]() { return "derived size law fails\nbase:\n" + show_vg(vg); });

      const RImage r = ctx.r_of(vg);
      require(r.labeled.graph().vertex_count() == vg.graph().vertex_count() * order &&
                  r.labeled.graph().dart_count() == vg.graph().dart_count() * order,
              [&]() {
                return "pullback size law fails: R(vg) has " +
                       std::to_string(r.labeled.graph().vertex_count()) +
                       " vertices and " +
                       std::to_string(r.labeled.graph().dart_count()) +
                       " darts\nbase:\n" + show_vg(vg);
              });
      const VoltMorphism j = iso_j(vg, r);
      require(!validate_volt_morphism(j).has_value(), [&]() {
        return "iso_j fails validation: " + *validate_volt_morphism(j) + "\nbase:\n" +
               show_vg(vg);
      });
      require(j.f().is_vertex_bijective() && j.f().is_dart_bijective(),
              [&]() { return "iso_j is not bijective\nbase:\n" + show_vg(vg); });
      const auto confirmed = find_isomorphism(j.f().domain(), lift.graph());
      require(confirmed.has_value(), [&]() {
        return "independent isomorphism search found no isomorphism LR(G) -> "
               "derived(G)\nbase:\n" +
               show_vg(vg);
      });
    }
    ctx.counters = " instances=" + std::to_string(instances);
  });
}

LawReport check_product_laws(const CheckConfig& config) {
  return run_law("product-laws", config, [&](LawCtx& ctx) {
    int reindexings = 0;
    for (const FiniteGroup& g1 : config.gen.group_palette)
      for (const FiniteGroup& g2 : config.gen.group_palette) {
        if (g1.order() * g2.order() > 12) continue;
        const GraphMorphism k_iso = k_ring_product_iso(g1, g2);
        require(!validate_morphism(k_iso).has_value() && k_iso.is_vertex_bijective() &&
                    k_iso.is_dart_bijective(),
                [&]() {
                  return "k_ring product reindexing is not an isomorphism for " +
                         g1.describe() + ", " + g2.describe();
                });
        const GraphMorphism ell_iso = ell_product_iso(g1, g2);
        require(!validate_morphism(ell_iso).has_value() &&
                    ell_iso.is_vertex_bijective() && ell_iso.is_dart_bijective(),
                [&]() {
                  return "ell product reindexing is not an isomorphism for " +
                         g1.describe() + ", " + g2.describe();
                });
        ++reindexings;
      }

    GeneratorConfig tiny = config.gen;
    tiny.max_vertices = std::min(tiny.max_vertices, 2);
    tiny.max_edges = std::min(tiny.max_edges, 2);
    InstanceGenerator gen(sub_seed(config.seed, "product-laws"), tiny);
    int products = 0;
    for (int it = 0; it < config.iterations; ++it) {
      const VoltageGraph v1 = ctx.sample_vg(gen);
      const VoltageGraph v2 = ctx.sample_vg(gen);
      const long long lift_vertices =
          static_cast<long long>(v1.graph().vertex_count()) *
          v2.graph().vertex_count() * v1.group().order() * v2.group().order();
      if (lift_vertices > 64) continue;
      ++products;
      const Graph lhs =
          product(derived(v1).graph(), derived(v2).graph()).apex;
      const Graph rhs = derived(volt_product(v1, v2)).graph();
      require(find_isomorphism(lhs, rhs).has_value(), [&]() {
        return "derived(v1) x derived(v2) is not isomorphic to derived(v1 x v2)"
               "\nv1:\n" +
               show_vg(v1) + "v2:\n" + show_vg(v2);
      });
    }
    require(reindexings > 0 && products > 0, []() {
      return std::string("no product instances were exercised; configuration too "
                         "restrictive");
    });
    ctx.counters = " reindexings=" + std::to_string(reindexings) +
                   " products=" + std::to_string(products);
  });
}

LawReport check_covering(const CheckConfig& config) {
  return run_law("covering", config, [&](LawCtx& ctx) {
    for (const FiniteGroup& g : config.gen.group_palette) {
      const GraphMorphism q = q_morphism(g);
      require(is_fibration(q),
              [&]() { return "q is not a fibration for " + g.describe(); });
      require(is_fibration_by_pullback_square(q) == is_fibration(q), [&]() {
        return "fibration routes disagree on q for " + g.describe();
      });
    }

    InstanceGenerator gen(sub_seed(config.seed, "covering"), config.gen);
    int instances = 0;
    for (int it = 0; it < config.iterations; ++it) {
      const VoltageGraph vg = ctx.sample_vg(gen);
      ++instances;
      require(!validate_voltage_graph(vg).has_value(), [&]() {
        return "generated instance fails validation: " + *validate_voltage_graph(vg) +
               "\n" + show_vg(vg);
      });
      const VoltMorphism eps = ctx.counit_of(vg);
      require(!validate_volt_morphism(eps).has_value(), [&]() {
        return "counit fails validation: " + *validate_volt_morphism(eps) +
               "\nbase:\n" + show_vg(vg);
      });
      require(is_covering(eps.f()),
              [&]() { return "counit is not a covering\nbase:\n" + show_vg(vg); });
      require(is_fibration(eps.f()) == is_fibration_by_pullback_square(eps.f()),
              [&]() { return "fibration routes disagree on the counit\nbase:\n" +
                             show_vg(vg); });
      const GraphMorphism p = derived_projection(vg);
      require(!validate_morphism(p).has_value() && is_covering(p), [&]() {
        return "derived projection is not a covering\nbase:\n" + show_vg(vg);
      });
      const RImage r = ctx.r_of(vg);
      require(is_fibration(r.projection), [&]() {
        return "pullback of q along the voltage is not a fibration\nbase:\n" +
               show_vg(vg);
      });
    }
    ctx.counters = " instances=" + std::to_string(instances);
  });
}

std::vector<LawReport> run_all(const CheckConfig& config) {
  std::vector<LawReport> reports;
  reports.push_back(check_counit_universal(config));
  reports.push_back(check_covering(config));
  reports.push_back(check_derived_iso(config));
  reports.push_back(check_naturality_q(config));
  reports.push_back(check_product_laws(config));
  reports.push_back(check_pullback_universality(config));
  return reports;
}

std::string report_text(const std::vector<LawReport>& reports) {
  std::ostringstream out;
  int passed = 0;
  for (const LawReport& r : reports) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.law << "  ("
        << static_cast<long long>(r.millis + 0.5) << " ms)  " << r.instance << "\n";
    if (!r.pass) {
      std::istringstream lines(r.counterexample);
      std::string line;
      while (std::getline(lines, line)) out << "    " << line << "\n";
    }
    passed += r.pass ? 1 : 0;
  }
  out << passed << "/" << reports.size() << " laws passed\n";
  return out.str();
}

std::string report_json(const std::vector<LawReport>& reports, bool include_timing) {
  std::ostringstream out;
  for (const LawReport& r : reports) {
    nlohmann::json j;
    j["law"] = r.law;
    j["seed"] = r.seed;
    j["instance"] = r.instance;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["counterexample"] = r.counterexample;
    j["millis"] = include_timing ? r.millis : 0.0;
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace voltlab::laws
