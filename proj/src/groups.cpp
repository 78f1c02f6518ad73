#include "voltlab/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace voltlab {

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be at least 1");
  FiniteGroup g;
  g.kind_ = Kind::Cyclic;
  g.order_ = n;
  return g;
}

FiniteGroup FiniteGroup::table(int n, std::vector<int> op_table) {
  if (n < 1) throw std::invalid_argument("table: order must be at least 1");
  if (op_table.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("table: expected " + std::to_string(n * n) + " entries");
  for (int x : op_table)
    if (x < 0 || x >= n) throw std::invalid_argument("table: entry out of range");

  // Relabel so a two-sided identity, if present, sits at index 0.
  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = op_table[cand * n + x] == x && op_table[x * n + cand] == x;
    if (ok) e = cand;
  }
  if (e > 0) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    perm[0] = e;
    perm[e] = 0;  // perm is its own inverse
    std::vector<int> relabeled(op_table.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        relabeled[perm[a] * n + perm[b]] = perm[op_table[a * n + b]];
    op_table = std::move(relabeled);
  }

  FiniteGroup g;
  g.kind_ = Kind::Table;
  g.order_ = n;
  g.table_ = std::move(op_table);
  return g;
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  FiniteGroup g;
  g.kind_ = FiniteGroup::Kind::Product;
  g.order_ = g1.order() * g2.order();
  g.left_ = std::make_shared<FiniteGroup>(g1);
  g.right_ = std::make_shared<FiniteGroup>(g2);
  return g;
}

int FiniteGroup::check_elem(int a) const {
  if (a < 0 || a >= order_) throw std::out_of_range("group element index out of range");
  return a;
}

int FiniteGroup::op(int a, int b) const {
  check_elem(a);
  check_elem(b);
  switch (kind_) {
    case Kind::Cyclic:
      return (a + b) % order_;
    case Kind::Product: {
      const auto [a1, a2] = unpair_index(a);
      const auto [b1, b2] = unpair_index(b);
      return pair_index(left_->op(a1, b1), right_->op(a2, b2));
    }
    case Kind::Table:
      return table_[static_cast<size_t>(a) * order_ + b];
  }
  throw std::logic_error("unreachable");
}

int FiniteGroup::inv(int a) const {
  check_elem(a);
  switch (kind_) {
    case Kind::Cyclic:
      return (order_ - a) % order_;
    case Kind::Product: {
      const auto [a1, a2] = unpair_index(a);
      return pair_index(left_->inv(a1), right_->inv(a2));
    }
    case Kind::Table:
      for (int b = 0; b < order_; ++b)
        if (op(a, b) == 0 && op(b, a) == 0) return b;
      throw std::invalid_argument("inv: element " + std::to_string(a) +
                                  " has no two-sided inverse");
  }
  throw std::logic_error("unreachable");
}

const FiniteGroup& FiniteGroup::left() const {
  if (kind_ != Kind::Product) throw std::logic_error("left(): not a product group");
  return *left_;
}

const FiniteGroup& FiniteGroup::right() const {
  if (kind_ != Kind::Product) throw std::logic_error("right(): not a product group");
  return *right_;
}

const std::vector<int>& FiniteGroup::table_data() const {
  if (kind_ != Kind::Table) throw std::logic_error("table_data(): not a table group");
  return table_;
}

int FiniteGroup::pair_index(int a, int b) const {
  if (kind_ != Kind::Product) throw std::logic_error("pair_index: not a product group");
  left_->check_elem(a);
  right_->check_elem(b);
  return a * right_->order() + b;
}

std::pair<int, int> FiniteGroup::unpair_index(int idx) const {
  if (kind_ != Kind::Product) throw std::logic_error("unpair_index: not a product group");
  check_elem(idx);
  return {idx / right_->order(), idx % right_->order()};
}

std::string FiniteGroup::element_name(int a) const {
  check_elem(a);
  if (kind_ != Kind::Product) return std::to_string(a);
  const auto [l, r] = unpair_index(a);
  return left_->element_name(l) + "," + right_->element_name(r);
}

int FiniteGroup::leaf_count() const {
  if (kind_ != Kind::Product) return 1;
  return left_->leaf_count() + right_->leaf_count();
}

namespace {

std::optional<int> fold_components(const FiniteGroup& g, const std::vector<int>& parts,
                                   size_t& pos) {
  if (g.kind() != FiniteGroup::Kind::Product) {
    if (pos >= parts.size()) return std::nullopt;
    const int x = parts[pos++];
    if (x < 0 || x >= g.order()) return std::nullopt;
    return x;
  }
  auto l = fold_components(g.left(), parts, pos);
  if (!l) return std::nullopt;
  auto r = fold_components(g.right(), parts, pos);
  if (!r) return std::nullopt;
  return g.pair_index(*l, *r);
}

}  // namespace

std::optional<int> FiniteGroup::parse_element(const std::string& text) const {
  std::vector<int> parts;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string piece =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    if (piece.size() > 9) return std::nullopt;  // indices are tiny; reject overflow
    parts.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != static_cast<size_t>(leaf_count())) return std::nullopt;
  size_t pos = 0;
  return fold_components(*this, parts, pos);
}

std::string FiniteGroup::describe() const {
  switch (kind_) {
    case Kind::Cyclic: return "Z" + std::to_string(order_);
    case Kind::Product: return left_->describe() + "x" + right_->describe();
    case Kind::Table: return "table" + std::to_string(order_);
  }
  return "?";
}

bool FiniteGroup::operator==(const FiniteGroup& other) const {
  if (kind_ != other.kind_ || order_ != other.order_) return false;
  switch (kind_) {
    case Kind::Cyclic: return true;
    case Kind::Product: return *left_ == *other.left_ && *right_ == *other.right_;
    case Kind::Table: return table_ == other.table_;
  }
  return false;
}

std::optional<std::string> validate_group(const FiniteGroup& g) {
  switch (g.kind()) {
    case FiniteGroup::Kind::Cyclic:
      return std::nullopt;
    case FiniteGroup::Kind::Product: {
      if (auto why = validate_group(g.left())) return "left factor: " + *why;
      if (auto why = validate_group(g.right())) return "right factor: " + *why;
      return std::nullopt;
    }
    case FiniteGroup::Kind::Table:
      break;
  }
  const int n = g.order();
  for (int x = 0; x < n; ++x) {
    if (g.op(0, x) != x || g.op(x, 0) != x)
      return "no identity at index 0 (fails at element " + std::to_string(x) + ")";
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
          return "associativity fails at (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")";
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n && !found; ++b)
      found = g.op(a, b) == 0 && g.op(b, a) == 0;
    if (!found) return "element " + std::to_string(a) + " has no two-sided inverse";
  }
  return std::nullopt;
}

GroupElement::GroupElement(FiniteGroup group, int index)
    : group_(std::move(group)), index_(index) {
  if (index_ < 0 || index_ >= group_.order())
    throw std::out_of_range("group element index out of range");
}

GroupElement op(const GroupElement& a, const GroupElement& b) {
  if (a.group() != b.group())
    throw std::invalid_argument("op: operands belong to different groups");
  return GroupElement(a.group(), a.group().op(a.index(), b.index()));
}

GroupElement inv(const GroupElement& a) {
  return GroupElement(a.group(), a.group().inv(a.index()));
}

GroupElement id(const FiniteGroup& g) { return GroupElement(g, g.identity()); }

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<int> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != static_cast<size_t>(source_.order()))
    throw std::invalid_argument("hom: image list is not total");
  for (int x : images_)
    if (x < 0 || x >= target_.order())
      throw std::invalid_argument("hom: image out of range");
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<int> images(g.order());
  std::iota(images.begin(), images.end(), 0);
  return GroupHom(g, g, std::move(images));
}

GroupHom GroupHom::trivial(const FiniteGroup& source, const FiniteGroup& target) {
  return GroupHom(source, target, std::vector<int>(source.order(), 0));
}

std::optional<std::string> validate_hom(const GroupHom& h) {
  const FiniteGroup& s = h.source();
  const FiniteGroup& t = h.target();
  for (int x = 0; x < s.order(); ++x)
    for (int y = 0; y < s.order(); ++y)
      if (h.apply(s.op(x, y)) != t.op(h.apply(x), h.apply(y)))
        return "hom equation fails at (" + std::to_string(x) + "," +
               std::to_string(y) + ")";
  return std::nullopt;
}

GroupHom compose(const GroupHom& f, const GroupHom& g) {
  if (f.target() != g.source())
    throw std::invalid_argument("compose: target of the first hom differs from source "
                                "of the second");
  std::vector<int> images(f.source().order());
  for (int x = 0; x < f.source().order(); ++x) images[x] = g.apply(f.apply(x));
  return GroupHom(f.source(), g.target(), std::move(images));
}

namespace {

// Greedy generating set: repeatedly adjoin the least element outside the
// generated subgroup. derivation[x] = (previous element, generator pos)
// lets any map on the generators extend multiplicatively.
struct Generators {
  std::vector<int> gens;
  std::vector<std::pair<int, int>> derivation;  // (-1,-1) for the identity
};

Generators find_generators(const FiniteGroup& g) {
  const int n = g.order();
  Generators out;
  out.derivation.assign(n, {-2, -2});  // -2 = not yet reached
  out.derivation[0] = {-1, -1};
  std::vector<int> reached = {0};
  size_t frontier = 0;

  auto close = [&]() {
    while (frontier < reached.size()) {
      const int x = reached[frontier++];
      for (size_t gi = 0; gi < out.gens.size(); ++gi) {
        const int y = g.op(x, out.gens[gi]);
        if (out.derivation[y].first == -2) {
          out.derivation[y] = {x, static_cast<int>(gi)};
          reached.push_back(y);
        }
      }
    }
  };

  while (static_cast<int>(reached.size()) < n) {
    int next = -1;
    for (int x = 0; x < n && next < 0; ++x)
      if (out.derivation[x].first == -2) next = x;
    out.gens.push_back(next);
    frontier = 0;  // rescan with the new generator available
    close();
  }
  return out;
}

}  // namespace

std::vector<GroupHom> enumerate_homs(const FiniteGroup& g1, const FiniteGroup& g2,
                                     const HomEnumCaps& caps) {
  if (g1.order() > caps.max_source_order || g2.order() > caps.max_target_order)
    throw std::invalid_argument("enumerate_homs: group order exceeds the enumeration "
                                "caps");
  const Generators gen = find_generators(g1);
  const int n1 = g1.order();
  const int n2 = g2.order();

  std::vector<GroupHom> out;
  std::vector<int> gen_images(gen.gens.size(), 0);
  // Elements in derivation-reachable order (identity first) so images can
  // be filled in one pass.
  std::vector<int> fill_order;
  {
    std::vector<char> placed(n1, 0);
    fill_order.push_back(0);
    placed[0] = 1;
    while (static_cast<int>(fill_order.size()) < n1)
      for (int x = 0; x < n1; ++x) {
        if (placed[x]) continue;
        const auto [prev, gi] = gen.derivation[x];
        if (placed[prev]) {
          fill_order.push_back(x);
          placed[x] = 1;
        }
      }
  }

  std::vector<int> images(n1, 0);
  const auto try_candidate = [&]() {
    for (int x : fill_order) {
      if (x == 0) {
        images[0] = 0;
        continue;
      }
      const auto [prev, gi] = gen.derivation[x];
      images[x] = g2.op(images[prev], gen_images[gi]);
    }
    GroupHom h(g1, g2, images);
    if (!validate_hom(h)) out.push_back(std::move(h));
  };

  if (gen.gens.empty()) {
    try_candidate();
    return out;
  }
  std::vector<size_t> odometer(gen.gens.size(), 0);
  while (true) {
    for (size_t i = 0; i < gen.gens.size(); ++i)
      gen_images[i] = static_cast<int>(odometer[i]);
    try_candidate();
    size_t i = 0;
    while (i < odometer.size() && ++odometer[i] == static_cast<size_t>(n2)) {
      odometer[i] = 0;
      ++i;
    }
    if (i == odometer.size()) break;
  }
  return out;
}

GroupHom proj_left_hom(const FiniteGroup& product_group) {
  const FiniteGroup& l = product_group.left();
  std::vector<int> images(product_group.order());
  for (int x = 0; x < product_group.order(); ++x)
    images[x] = product_group.unpair_index(x).first;
  return GroupHom(product_group, l, std::move(images));
}

GroupHom proj_right_hom(const FiniteGroup& product_group) {
  const FiniteGroup& r = product_group.right();
  std::vector<int> images(product_group.order());
  for (int x = 0; x < product_group.order(); ++x)
    images[x] = product_group.unpair_index(x).second;
  return GroupHom(product_group, r, std::move(images));
}

GroupHom pair_hom(const GroupHom& f, const GroupHom& g) {
  if (f.source() != g.source())
    throw std::invalid_argument("pair_hom: the two homs have different sources");
  const FiniteGroup target = direct_product(f.target(), g.target());
  std::vector<int> images(f.source().order());
  for (int x = 0; x < f.source().order(); ++x)
    images[x] = target.pair_index(f.apply(x), g.apply(x));
  return GroupHom(f.source(), target, std::move(images));
}

}  // namespace voltlab
