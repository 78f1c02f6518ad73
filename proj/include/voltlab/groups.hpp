#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace voltlab {

/// Finite group with elements addressed by index 0..order-1; the
/// identity sits at index 0 (explicit operation tables are relabeled on
/// construction when their identity is elsewhere). Three kinds are
/// built in: cyclic groups, direct products, and explicit tables.
///
/// Values are immutable; product components are shared.
class FiniteGroup {
 public:
  enum class Kind { Cyclic, Product, Table };

  static FiniteGroup cyclic(int n);
  /// Row-major n*n operation table. Relabels so the two-sided identity
  /// (when one exists) gets index 0; other axioms are left to
  /// validate_group so that defective tables can be constructed and
  /// reported.
  static FiniteGroup table(int n, std::vector<int> op_table);

  Kind kind() const { return kind_; }
  int order() const { return order_; }

  int op(int a, int b) const;
  int inv(int a) const;
  int identity() const { return 0; }
  bool is_involution(int a) const { return op(a, a) == 0; }

  /// Product components; only valid for Kind::Product.
  const FiniteGroup& left() const;
  const FiniteGroup& right() const;
  /// Operation table contents; only valid for Kind::Table.
  const std::vector<int>& table_data() const;

  /// Element index of the pair (a, b) in a product group: a * |right| + b.
  int pair_index(int a, int b) const;
  std::pair<int, int> unpair_index(int idx) const;

  /// Serialized element: the index for cyclic/table groups, comma-joined
  /// leaf indices for products ("1,0,2" for nested products, folded left).
  std::string element_name(int a) const;
  std::optional<int> parse_element(const std::string& text) const;
  /// Number of non-product factors in the product tree.
  int leaf_count() const;

  /// Human-readable group name, e.g. "Z4", "Z2xZ3", "table6".
  std::string describe() const;

  bool operator==(const FiniteGroup& other) const;
  bool operator!=(const FiniteGroup& other) const { return !(*this == other); }

 private:
  FiniteGroup() = default;
  int check_elem(int a) const;

  Kind kind_ = Kind::Cyclic;
  int order_ = 1;
  std::shared_ptr<const FiniteGroup> left_, right_;  // Product
  std::vector<int> table_;                           // Table

  friend FiniteGroup direct_product(const FiniteGroup&, const FiniteGroup&);
};

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

/// Exhaustive associativity/identity/inverse check for table groups
/// (violations name the offending elements); cyclic and product groups
/// hold by construction, products of tables recurse.
std::optional<std::string> validate_group(const FiniteGroup& g);

/// Element paired with its group, for call sites that want the
/// cross-group checks; the rest of the library works with raw indices.
class GroupElement {
 public:
  GroupElement(FiniteGroup group, int index);
  const FiniteGroup& group() const { return group_; }
  int index() const { return index_; }
  bool operator==(const GroupElement& o) const {
    return group_ == o.group_ && index_ == o.index_;
  }

 private:
  FiniteGroup group_;
  int index_;
};

GroupElement op(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
GroupElement id(const FiniteGroup& g);

/// Map between groups given by element images. The constructor checks
/// shape only; validate_hom checks the homomorphism equation.
class GroupHom {
 public:
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<int> images);
  static GroupHom identity(const FiniteGroup& g);
  static GroupHom trivial(const FiniteGroup& source, const FiniteGroup& target);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  int apply(int a) const { return images_[a]; }
  const std::vector<int>& images() const { return images_; }

  bool operator==(const GroupHom& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
  }
  bool operator!=(const GroupHom& o) const { return !(*this == o); }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<int> images_;
};

std::optional<std::string> validate_hom(const GroupHom& h);

/// Diagrammatic composition: first f, then g.
GroupHom compose(const GroupHom& f, const GroupHom& g);

struct HomEnumCaps {
  int max_source_order = 8;
  int max_target_order = 12;
};

/// All homomorphisms g1 -> g2, complete and duplicate-free: images of a
/// generating set are enumerated, extended multiplicatively, and the
/// resulting maps verified exhaustively. Throws beyond the caps.
std::vector<GroupHom> enumerate_homs(const FiniteGroup& g1, const FiniteGroup& g2,
                                     const HomEnumCaps& caps = {});

/// Projections of a product group, as validated homs.
GroupHom proj_left_hom(const FiniteGroup& product_group);
GroupHom proj_right_hom(const FiniteGroup& product_group);

/// Pairing <f, g>: X -> A x B of two homs with a common source.
GroupHom pair_hom(const GroupHom& f, const GroupHom& g);

}  // namespace voltlab
