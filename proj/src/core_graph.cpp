#include "voltlab/core_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace voltlab {

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Semiedge: return "semiedge";
    case EdgeKind::Loop: return "loop";
    case EdgeKind::Link: return "link";
  }
  return "?";
}

namespace {

std::optional<std::string> first_violation(int n, const std::vector<VertexId>& src,
                                           const std::vector<VertexId>& tgt,
                                           const std::vector<DartId>& lam,
                                           const std::vector<std::string>& names) {
  if (n < 0) return "vertex count is negative";
  const auto m = src.size();
  if (tgt.size() != m || lam.size() != m)
    return "src, tgt and lambda must all be total over the darts";
  if (!names.empty() && names.size() != static_cast<size_t>(n))
    return "vertex name list does not match the vertex count";
  for (size_t d = 0; d < m; ++d) {
    if (src[d] < 0 || src[d] >= n) return "src out of range at dart " + std::to_string(d);
    if (tgt[d] < 0 || tgt[d] >= n) return "tgt out of range at dart " + std::to_string(d);
    if (lam[d] < 0 || lam[d] >= static_cast<int>(m))
      return "lambda out of range at dart " + std::to_string(d);
  }
  for (size_t d = 0; d < m; ++d) {
    if (lam[lam[d]] != static_cast<int>(d))
      return "lambda is not an involution at dart " + std::to_string(d);
  }
  for (size_t d = 0; d < m; ++d) {
    if (src[lam[d]] != tgt[d])
      return "src(lambda(d)) != tgt(d) at dart " + std::to_string(d);
  }
  return std::nullopt;
}

}  // namespace

Graph::Graph(int vertex_count, std::vector<VertexId> src, std::vector<VertexId> tgt,
             std::vector<DartId> lam, std::vector<std::string> vertex_names)
    : n_(vertex_count),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      lam_(std::move(lam)),
      names_(std::move(vertex_names)) {
  if (auto why = first_violation(n_, src_, tgt_, lam_, names_))
    throw std::invalid_argument("invalid graph: " + *why);
}

Graph Graph::unchecked(int vertex_count, std::vector<VertexId> src,
                       std::vector<VertexId> tgt, std::vector<DartId> lam,
                       std::vector<std::string> vertex_names) {
  Graph g;
  g.n_ = vertex_count;
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  g.lam_ = std::move(lam);
  g.names_ = std::move(vertex_names);
  return g;
}

std::string Graph::vertex_name(VertexId v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
  if (static_cast<size_t>(v) < names_.size()) return names_[v];
  return "v" + std::to_string(v);
}

Graph Graph::with_vertex_names(std::vector<std::string> names) const {
  if (!names.empty() && names.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("vertex name list does not match the vertex count");
  Graph g = *this;
  g.names_ = std::move(names);
  return g;
}

bool Graph::operator==(const Graph& other) const {
  return n_ == other.n_ && src_ == other.src_ && tgt_ == other.tgt_ && lam_ == other.lam_;
}

DartId Graph::check_dart(DartId d) const {
  if (d < 0 || d >= dart_count()) throw std::out_of_range("dart id out of range");
  return d;
}

Graph build_graph(int vertex_count, const std::vector<EdgeSpec>& edges,
                  std::vector<std::string> vertex_names) {
  std::vector<VertexId> src, tgt;
  std::vector<DartId> lam;
  for (const EdgeSpec& e : edges) {
    if (e.u < 0 || e.u >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    const DartId d = static_cast<DartId>(src.size());
    switch (e.kind) {
      case EdgeKind::Semiedge:
        src.push_back(e.u);
        tgt.push_back(e.u);
        lam.push_back(d);
        break;
      case EdgeKind::Loop:
        src.insert(src.end(), {e.u, e.u});
        tgt.insert(tgt.end(), {e.u, e.u});
        lam.insert(lam.end(), {d + 1, d});
        break;
      case EdgeKind::Link:
        if (e.v < 0 || e.v >= vertex_count)
          throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v)
          throw std::invalid_argument("a link needs two distinct endpoints");
        src.insert(src.end(), {e.u, e.v});
        tgt.insert(tgt.end(), {e.v, e.u});
        lam.insert(lam.end(), {d + 1, d});
        break;
    }
  }
  return Graph(vertex_count, std::move(src), std::move(tgt), std::move(lam),
               std::move(vertex_names));
}

std::optional<std::string> validate_graph(const Graph& g) {
  return first_violation(g.vertex_count(), g.src_map(), g.tgt_map(), g.lambda_map(),
                         g.raw_vertex_names());
}

EdgeKind classify_edge(const Graph& g, DartId d) {
  if (g.reverse(d) == d) return EdgeKind::Semiedge;
  return g.src(d) == g.tgt(d) ? EdgeKind::Loop : EdgeKind::Link;
}

std::vector<std::pair<DartId, DartId>> edges(const Graph& g) {
  std::vector<std::pair<DartId, DartId>> out;
  for (DartId d = 0; d < g.dart_count(); ++d) {
    const DartId r = g.reverse(d);
    if (r < d) continue;  // orbit already emitted
    out.emplace_back(d, r);
  }
  return out;
}

std::vector<DartId> in_neighbourhood(const Graph& g, VertexId v) {
  if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("vertex id out of range");
  std::vector<DartId> out;
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (g.tgt(d) == v) out.push_back(d);
  return out;
}

GraphMorphism::GraphMorphism(Graph domain, Graph codomain, std::vector<VertexId> vmap,
                             std::vector<DartId> dmap)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      vmap_(std::move(vmap)),
      dmap_(std::move(dmap)) {
  if (vmap_.size() != static_cast<size_t>(domain_.vertex_count()))
    throw std::invalid_argument("vertex map is not total");
  if (dmap_.size() != static_cast<size_t>(domain_.dart_count()))
    throw std::invalid_argument("dart map is not total");
  for (VertexId w : vmap_)
    if (w < 0 || w >= codomain_.vertex_count())
      throw std::invalid_argument("vertex map image out of range");
  for (DartId e : dmap_)
    if (e < 0 || e >= codomain_.dart_count())
      throw std::invalid_argument("dart map image out of range");
}

GraphMorphism GraphMorphism::identity(const Graph& g) {
  std::vector<VertexId> vmap(g.vertex_count());
  std::iota(vmap.begin(), vmap.end(), 0);
  std::vector<DartId> dmap(g.dart_count());
  std::iota(dmap.begin(), dmap.end(), 0);
  return GraphMorphism(g, g, std::move(vmap), std::move(dmap));
}

namespace {

bool is_permutation_map(const std::vector<int>& map, int codomain_size) {
  if (map.size() != static_cast<size_t>(codomain_size)) return false;
  std::vector<char> seen(codomain_size, 0);
  for (int x : map) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

bool GraphMorphism::is_vertex_bijective() const {
  return is_permutation_map(vmap_, codomain_.vertex_count());
}

bool GraphMorphism::is_dart_bijective() const {
  return is_permutation_map(dmap_, codomain_.dart_count());
}

bool GraphMorphism::operator==(const GraphMorphism& other) const {
  return domain_ == other.domain_ && codomain_ == other.codomain_ &&
         vmap_ == other.vmap_ && dmap_ == other.dmap_;
}

std::optional<std::string> validate_morphism(const GraphMorphism& f) {
  if (auto why = validate_graph(f.domain())) return "domain: " + *why;
  if (auto why = validate_graph(f.codomain())) return "codomain: " + *why;
  const Graph& g = f.domain();
  const Graph& h = f.codomain();
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (h.src(f.d(d)) != f.v(g.src(d)))
      return "src condition fails at dart " + std::to_string(d);
    if (h.tgt(f.d(d)) != f.v(g.tgt(d)))
      return "tgt condition fails at dart " + std::to_string(d);
    if (h.reverse(f.d(d)) != f.d(g.reverse(d)))
      return "involution condition fails at dart " + std::to_string(d);
  }
  return std::nullopt;
}

GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g) {
  if (f.codomain() != g.domain())
    throw std::invalid_argument("compose: codomain of the first morphism differs from "
                                "domain of the second");
  std::vector<VertexId> vmap(f.domain().vertex_count());
  for (VertexId v = 0; v < f.domain().vertex_count(); ++v) vmap[v] = g.v(f.v(v));
  std::vector<DartId> dmap(f.domain().dart_count());
  for (DartId d = 0; d < f.domain().dart_count(); ++d) dmap[d] = g.d(f.d(d));
  return GraphMorphism(f.domain(), g.codomain(), std::move(vmap), std::move(dmap));
}

namespace {

// Binary search over a lexicographically sorted pair list.
std::optional<int> pair_position(const std::vector<std::pair<int, int>>& pairs,
                                 int left, int right) {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(left, right));
  if (it == pairs.end() || *it != std::make_pair(left, right)) return std::nullopt;
  return static_cast<int>(it - pairs.begin());
}

}  // namespace

std::optional<VertexId> PullbackResult::find_vertex(VertexId left, VertexId right) const {
  return pair_position(vertex_index, left, right);
}

std::optional<DartId> PullbackResult::find_dart(DartId left, DartId right) const {
  return pair_position(dart_index, left, right);
}

std::optional<GraphMorphism> PullbackResult::mediate(const GraphMorphism& to_left,
                                                     const GraphMorphism& to_right) const {
  if (to_left.domain() != to_right.domain())
    throw std::invalid_argument("mediate: the two legs have different domains");
  if (to_left.codomain() != proj_left.codomain() ||
      to_right.codomain() != proj_right.codomain())
    throw std::invalid_argument("mediate: legs do not land in the cospan feet");
  const Graph& v = to_left.domain();
  std::vector<VertexId> vmap(v.vertex_count());
  for (VertexId x = 0; x < v.vertex_count(); ++x) {
    auto pos = find_vertex(to_left.v(x), to_right.v(x));
    if (!pos) return std::nullopt;  // outer square does not commute here
    vmap[x] = *pos;
  }
  std::vector<DartId> dmap(v.dart_count());
  for (DartId x = 0; x < v.dart_count(); ++x) {
    auto pos = find_dart(to_left.d(x), to_right.d(x));
    if (!pos) return std::nullopt;
    dmap[x] = *pos;
  }
  return GraphMorphism(v, apex, std::move(vmap), std::move(dmap));
}

PullbackResult pullback(const GraphMorphism& f1, const GraphMorphism& f2) {
  if (f1.codomain() != f2.codomain())
    throw std::invalid_argument("pullback: the cospan legs have different codomains");
  if (auto why = validate_morphism(f1))
    throw std::invalid_argument("pullback: left leg invalid: " + *why);
  if (auto why = validate_morphism(f2))
    throw std::invalid_argument("pullback: right leg invalid: " + *why);

  const Graph& g1 = f1.domain();
  const Graph& g2 = f2.domain();

  std::vector<std::pair<VertexId, VertexId>> vpairs;
  for (VertexId a = 0; a < g1.vertex_count(); ++a)
    for (VertexId b = 0; b < g2.vertex_count(); ++b)
      if (f1.v(a) == f2.v(b)) vpairs.emplace_back(a, b);

  std::vector<std::pair<DartId, DartId>> dpairs;
  for (DartId a = 0; a < g1.dart_count(); ++a)
    for (DartId b = 0; b < g2.dart_count(); ++b)
      if (f1.d(a) == f2.d(b)) dpairs.emplace_back(a, b);

  auto vertex_at = [&vpairs](VertexId a, VertexId b) {
    return *pair_position(vpairs, a, b);
  };
  auto dart_at = [&dpairs](DartId a, DartId b) {
    return *pair_position(dpairs, a, b);
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

  Graph apex(nv, std::move(src), std::move(tgt), std::move(lam));
  GraphMorphism proj_left(apex, g1, std::move(pv1), std::move(pd1));
  GraphMorphism proj_right(apex, g2, std::move(pv2), std::move(pd2));
  return PullbackResult{std::move(apex), std::move(proj_left), std::move(proj_right),
                        std::move(vpairs), std::move(dpairs)};
}

PullbackResult product(const Graph& g1, const Graph& g2) {
  const int n2 = g2.vertex_count();
  const int m2 = g2.dart_count();
  const int nv = g1.vertex_count() * n2;
  const int nd = g1.dart_count() * m2;

  std::vector<std::pair<VertexId, VertexId>> vpairs;
  vpairs.reserve(nv);
  for (VertexId a = 0; a < g1.vertex_count(); ++a)
    for (VertexId b = 0; b < n2; ++b) vpairs.emplace_back(a, b);
  std::vector<std::pair<DartId, DartId>> dpairs;
  dpairs.reserve(nd);
  for (DartId a = 0; a < g1.dart_count(); ++a)
    for (DartId b = 0; b < m2; ++b) dpairs.emplace_back(a, b);

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
    src[i] = g1.src(a) * n2 + g2.src(b);
    tgt[i] = g1.tgt(a) * n2 + g2.tgt(b);
    lam[i] = g1.reverse(a) * m2 + g2.reverse(b);
    pd1[i] = a;
    pd2[i] = b;
  }

  Graph apex(nv, std::move(src), std::move(tgt), std::move(lam));
  GraphMorphism proj_left(apex, g1, std::move(pv1), std::move(pd1));
  GraphMorphism proj_right(apex, g2, std::move(pv2), std::move(pd2));
  return PullbackResult{std::move(apex), std::move(proj_left), std::move(proj_right),
                        std::move(vpairs), std::move(dpairs)};
}

namespace {

struct VertexSignature {
  int degree = 0;
  int semiedges = 0;
  int loop_darts = 0;
  int link_darts = 0;

  bool operator==(const VertexSignature& o) const {
    return degree == o.degree && semiedges == o.semiedges &&
           loop_darts == o.loop_darts && link_darts == o.link_darts;
  }
  bool operator<(const VertexSignature& o) const {
    return std::tie(degree, semiedges, loop_darts, link_darts) <
           std::tie(o.degree, o.semiedges, o.loop_darts, o.link_darts);
  }
};

std::vector<VertexSignature> vertex_signatures(const Graph& g) {
  std::vector<VertexSignature> sig(g.vertex_count());
  for (DartId d = 0; d < g.dart_count(); ++d) {
    VertexSignature& s = sig[g.src(d)];
    s.degree += 1;
    switch (classify_edge(g, d)) {
      case EdgeKind::Semiedge: s.semiedges += 1; break;
      case EdgeKind::Loop: s.loop_darts += 1; break;
      case EdgeKind::Link: s.link_darts += 1; break;
    }
  }
  return sig;
}

// cnt[a][b] = number of darts with source a and target b.
std::vector<std::vector<int>> dart_count_matrix(const Graph& g) {
  std::vector<std::vector<int>> cnt(g.vertex_count(),
                                    std::vector<int>(g.vertex_count(), 0));
  for (DartId d = 0; d < g.dart_count(); ++d) cnt[g.src(d)][g.tgt(d)] += 1;
  return cnt;
}

// BFS order over the link/loop adjacency so that most vertices are
// assigned next to an already assigned neighbour.
std::vector<VertexId> bfs_assignment_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<VertexId>> adj(n);
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (classify_edge(g, d) != EdgeKind::Semiedge) adj[g.src(d)].push_back(g.tgt(d));
  std::vector<char> seen(n, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::queue<VertexId> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      order.push_back(v);
      for (VertexId w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
  }
  return order;
}

struct IsoSearch {
  const Graph& g1;
  const Graph& g2;
  std::vector<VertexSignature> sig1, sig2;
  std::vector<std::vector<int>> cnt1, cnt2;
  std::vector<VertexId> order;
  std::vector<VertexId> img;      // g1 vertex -> g2 vertex or -1
  std::vector<char> used;         // g2 vertex taken
  std::vector<VertexId> assigned; // prefix of `order` already mapped

  bool assign(size_t k) {
    if (k == order.size()) return true;
    const VertexId v = order[k];
    for (VertexId w = 0; w < g2.vertex_count(); ++w) {
      if (used[w] || !(sig1[v] == sig2[w])) continue;
      bool ok = true;
      for (VertexId a : assigned) {
        if (cnt1[v][a] != cnt2[w][img[a]] || cnt1[a][v] != cnt2[img[a]][w]) {
          ok = false;
          break;
        }
      }
      if (!ok || cnt1[v][v] != cnt2[w][w]) continue;
      img[v] = w;
      used[w] = 1;
      assigned.push_back(v);
      if (assign(k + 1)) return true;
      assigned.pop_back();
      used[w] = 0;
      img[v] = -1;
    }
    return false;
  }
};

// With a dart-count-compatible vertex bijection fixed, a dart bijection
// always exists; build the canonical one orbit by orbit. Link orbits are
// bucketed by unordered endpoint pair because a codomain orbit's least
// dart may run in either direction.
std::vector<DartId> extend_to_darts(const Graph& g1, const Graph& g2,
                                    const std::vector<VertexId>& img) {
  const long long n2 = std::max(g2.vertex_count(), 1);
  auto bucket_key = [n2](VertexId a, VertexId b, EdgeKind k) {
    if (k == EdgeKind::Link && a > b) std::swap(a, b);
    return static_cast<size_t>((a * n2 + b) * 3 + static_cast<int>(k));
  };
  std::vector<std::vector<DartId>> buckets(static_cast<size_t>(n2) * n2 * 3);
  for (auto [d, r] : edges(g2))
    buckets[bucket_key(g2.src(d), g2.tgt(d), classify_edge(g2, d))].push_back(d);
  std::vector<size_t> cursor(buckets.size(), 0);

  std::vector<DartId> dmap(g1.dart_count(), -1);
  for (auto [d, r] : edges(g1)) {
    const VertexId a = img[g1.src(d)];
    const VertexId b = img[g1.tgt(d)];
    const size_t key = bucket_key(a, b, classify_edge(g1, d));
    const auto& bucket = buckets[key];
    size_t& cur = cursor[key];
    if (cur >= bucket.size())
      throw std::logic_error("dart extension ran out of images");  // counts guarantee it
    DartId e = bucket[cur++];
    if (g2.src(e) != a) e = g2.reverse(e);  // orient the image orbit
    dmap[d] = e;
    dmap[r] = g2.reverse(e);
  }
  return dmap;
}

}  // namespace

std::optional<GraphMorphism> find_isomorphism(const Graph& g1, const Graph& g2,
                                              int vertex_cap) {
  if (g1.vertex_count() > vertex_cap || g2.vertex_count() > vertex_cap)
    throw std::invalid_argument("find_isomorphism: size cap of " +
                                std::to_string(vertex_cap) + " vertices exceeded");
  if (g1.vertex_count() != g2.vertex_count() || g1.dart_count() != g2.dart_count())
    return std::nullopt;

  IsoSearch search{g1, g2, vertex_signatures(g1), vertex_signatures(g2),
                   dart_count_matrix(g1), dart_count_matrix(g2),
                   bfs_assignment_order(g1),
                   std::vector<VertexId>(g1.vertex_count(), -1),
                   std::vector<char>(g2.vertex_count(), 0),
                   {}};

  // Global multiset reject before searching.
  auto s1 = search.sig1;
  auto s2 = search.sig2;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (!(s1 == s2)) return std::nullopt;

  if (!search.assign(0)) return std::nullopt;
  std::vector<DartId> dmap = extend_to_darts(g1, g2, search.img);
  return GraphMorphism(g1, g2, search.img, std::move(dmap));
}

bool is_fibration(const GraphMorphism& f) {
  if (auto why = validate_morphism(f))
    throw std::invalid_argument("is_fibration: invalid morphism: " + *why);
  const Graph& g = f.domain();
  const Graph& h = f.codomain();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<DartId> images;
    for (DartId d : in_neighbourhood(g, v)) images.push_back(f.d(d));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    if (images != in_neighbourhood(h, f.v(v))) return false;
  }
  return true;
}

bool is_fibration_by_pullback_square(const GraphMorphism& f) {
  if (auto why = validate_morphism(f))
    throw std::invalid_argument("is_fibration: invalid morphism: " + *why);
  const Graph& g = f.domain();
  const Graph& h = f.codomain();
  // The square (tgt, f^D, f^V, tgt) is a pullback in Set iff
  // d |-> (f^D(d), tgt(d)) is a bijection onto {(e, v) : tgt(e) = f^V(v)}.
  std::vector<std::pair<DartId, VertexId>> want;
  for (DartId e = 0; e < h.dart_count(); ++e)
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (h.tgt(e) == f.v(v)) want.emplace_back(e, v);
  std::vector<std::pair<DartId, VertexId>> got;
  for (DartId d = 0; d < g.dart_count(); ++d) got.emplace_back(f.d(d), g.tgt(d));
  std::sort(got.begin(), got.end());
  if (std::adjacent_find(got.begin(), got.end()) != got.end()) return false;
  return got == want;
}

bool is_covering(const GraphMorphism& f) {
  if (!is_fibration(f)) return false;
  std::vector<char> hit(f.codomain().vertex_count(), 0);
  for (VertexId v = 0; v < f.domain().vertex_count(); ++v) hit[f.v(v)] = 1;
  return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.vertices = g.vertex_count();
  s.darts = g.dart_count();
  s.degrees.assign(g.vertex_count(), 0);
  for (DartId d = 0; d < g.dart_count(); ++d) s.degrees[g.src(d)] += 1;
  s.degree_sequence = s.degrees;
  std::sort(s.degree_sequence.rbegin(), s.degree_sequence.rend());

  for (auto [d, r] : edges(g)) {
    s.edges += 1;
    switch (classify_edge(g, d)) {
      case EdgeKind::Semiedge: s.semiedges += 1; break;
      case EdgeKind::Loop: s.loops += 1; break;
      case EdgeKind::Link: s.links += 1; break;
    }
  }

  const int n = g.vertex_count();
  std::vector<std::vector<VertexId>> adj(n);
  for (DartId d = 0; d < g.dart_count(); ++d)
    if (classify_edge(g, d) != EdgeKind::Semiedge) adj[g.src(d)].push_back(g.tgt(d));

  std::vector<int> component(n, -1);
  int comp = 0;
  for (VertexId start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::queue<VertexId> q;
    q.push(start);
    component[start] = comp;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId w : adj[v])
        if (component[w] < 0) {
          component[w] = comp;
          q.push(w);
        }
    }
    ++comp;
  }
  s.components = comp;

  if (comp == 1) {
    int diameter = 0;
    for (VertexId start = 0; start < n; ++start) {
      std::vector<int> dist(n, -1);
      std::queue<VertexId> q;
      q.push(start);
      dist[start] = 0;
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        diameter = std::max(diameter, dist[v]);
        for (VertexId w : adj[v])
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            q.push(w);
          }
      }
    }
    s.diameter = diameter;
  }
  return s;
}

namespace detail {

std::vector<GraphMorphism> enumerate_morphisms_filtered(
    const Graph& dom, const Graph& cod,
    const std::function<bool(VertexId, VertexId)>& vertex_ok,
    const std::function<bool(DartId, DartId)>& dart_ok) {
  std::vector<GraphMorphism> out;
  const int nv = dom.vertex_count();
  const int nd = dom.dart_count();

  // Codomain darts bucketed by (src, tgt) for fast dart candidates.
  std::vector<std::vector<DartId>> by_ends(
      static_cast<size_t>(cod.vertex_count()) * std::max(cod.vertex_count(), 1));
  for (DartId e = 0; e < cod.dart_count(); ++e)
    by_ends[static_cast<size_t>(cod.src(e)) * cod.vertex_count() + cod.tgt(e)]
        .push_back(e);

  std::vector<VertexId> vmap(nv, -1);
  std::vector<DartId> dmap(nd, -1);

  std::function<void(int)> assign_darts = [&](int d) {
    if (d == nd) {
      out.emplace_back(dom, cod, vmap, dmap);
      return;
    }
    const VertexId a = vmap[dom.src(d)];
    const VertexId b = vmap[dom.tgt(d)];
    for (DartId e : by_ends[static_cast<size_t>(a) * cod.vertex_count() + b]) {
      const DartId r = dom.reverse(d);
      if (r < d && dmap[r] != cod.reverse(e)) continue;  // involution compat
      if (r == d && cod.reverse(e) != e) continue;       // semiedge needs a fixed dart
      if (dart_ok && !dart_ok(d, e)) continue;
      dmap[d] = e;
      assign_darts(d + 1);
      dmap[d] = -1;
    }
  };

  std::function<void(int)> assign_vertices = [&](int v) {
    if (v == nv) {
      if (nd == 0) {
        out.emplace_back(dom, cod, vmap, dmap);
        return;
      }
      assign_darts(0);
      return;
    }
    for (VertexId w = 0; w < cod.vertex_count(); ++w) {
      if (vertex_ok && !vertex_ok(v, w)) continue;
      vmap[v] = w;
      assign_vertices(v + 1);
      vmap[v] = -1;
    }
  };

  if (nv == 0) {
    if (nd == 0) out.emplace_back(dom, cod, vmap, dmap);
    return out;
  }
  assign_vertices(0);
  return out;
}

}  // namespace detail

std::vector<GraphMorphism> enumerate_graph_morphisms(const Graph& dom, const Graph& cod,
                                                     const MorphismEnumCaps& caps) {
  if (dom.vertex_count() > caps.max_domain_vertices ||
      dom.dart_count() > caps.max_domain_darts)
    throw std::invalid_argument("enumerate_graph_morphisms: domain exceeds the "
                                "enumeration caps");
  return detail::enumerate_morphisms_filtered(dom, cod, nullptr, nullptr);
}

}  // namespace voltlab
