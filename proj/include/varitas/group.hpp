#pragma once

#include <compare>
#include <initializer_list>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace varitas {

/// Index of an element in a FiniteGroup.  Index 0 is always the identity.
using Elem = std::uint32_t;

/// A permutation of {0, ..., degree-1}, printed 1-based in cycle notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t degree);
  /// Parses cycle notation such as "(1 2)(3 4)" or "()".  The degree is the
  /// larger of `degree` and the largest point mentioned.
  static Permutation parse(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator()(std::uint32_t point) const {
    return point < images_.size() ? images_[point] : point;
  }
  std::vector<std::uint32_t> const& images() const noexcept { return images_; }

  Permutation extended(std::size_t degree) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::string to_cycles() const;

  /// Function composition: the right factor is applied first, so
  /// (p * q)(x) = p(q(x)).
  friend Permutation operator*(Permutation const& p, Permutation const& q);

  auto operator<=>(Permutation const&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// A finite group given by its multiplication table.  Instances are
/// immutable handles; copies share the table.
class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup();

  /// Validates the group axioms.  Row/column 0 must be the identity.
  static FiniteGroup from_table(std::string name,
                                std::vector<std::vector<Elem>> const& table,
                                std::vector<std::string> labels = {});

  /// Closes the generators under composition.  Elements are indexed in
  /// lexicographic order of their image arrays, so index 0 is the identity.
  static FiniteGroup from_permutations(std::string name,
                                       std::span<Permutation const> generators,
                                       std::size_t order_cap = 0);

  std::size_t order() const noexcept { return n_; }
  Elem identity() const noexcept { return 0; }

  Elem mul(Elem a, Elem b) const noexcept { return table_[a * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inverse_[a]; }
  /// a^x = x^-1 a x
  Elem conj(Elem a, Elem x) const noexcept { return mul(inv(x), mul(a, x)); }
  /// [x, y] = x^-1 y^-1 x y
  Elem comm(Elem x, Elem y) const noexcept {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }
  Elem pow(Elem a, std::int64_t k) const;
  std::size_t element_order(Elem a) const;

  std::string const& name() const;
  std::string const& label(Elem a) const;
  std::optional<Elem> find(std::string_view label) const;
  /// Like find(), but throws InvalidArgument for unknown labels.
  Elem element(std::string_view label) const;

  bool is_abelian() const;
  /// Permutation images when the group was built from permutations.
  std::vector<Permutation> const* permutations() const;

  std::span<Elem const> table() const noexcept { return {table_, n_ * n_}; }
  std::span<Elem const> inverses() const noexcept { return {inverse_, n_}; }

  /// Identity of the underlying table, not structural equality.
  bool same_as(FiniteGroup const& other) const noexcept { return d_ == other.d_; }
  FiniteGroup renamed(std::string name) const;

  void check_index(Elem a) const;

 private:
  struct Data;
  explicit FiniteGroup(std::shared_ptr<Data const> d);

  std::shared_ptr<Data const> d_;
  // cached from d_ for the hot paths
  std::size_t n_ = 1;
  Elem const* table_ = nullptr;
  Elem const* inverse_ = nullptr;

  friend FiniteGroup make_group_unchecked(std::string, std::size_t,
                                          std::vector<Elem>,
                                          std::vector<std::string>,
                                          std::vector<Permutation>);
};

/// Builds a group from a table known to satisfy the axioms.
FiniteGroup make_group_unchecked(std::string name, std::size_t order,
                                 std::vector<Elem> table,
                                 std::vector<std::string> labels,
                                 std::vector<Permutation> perms = {});

/// A subgroup of a parent group, kept as a sorted element list plus a
/// membership bitmap.
class SubgroupSet {
 public:
  SubgroupSet() = default;
  /// `members` must be a subgroup of `parent`; this is checked.
  SubgroupSet(FiniteGroup parent, std::vector<Elem> members);

  /// Skips the closure check; `members` must be sorted and closed.
  static SubgroupSet unchecked(FiniteGroup parent, std::vector<Elem> members);
  static SubgroupSet whole(FiniteGroup const& g);
  static SubgroupSet trivial(FiniteGroup const& g);

  FiniteGroup const& parent() const noexcept { return parent_; }
  std::vector<Elem> const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Elem a) const noexcept {
    return a < bits_.size() * 64 && ((bits_[a >> 6] >> (a & 63)) & 1u);
  }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == parent_.order(); }
  std::vector<std::uint64_t> const& bits() const noexcept { return bits_; }

  bool is_subset_of(SubgroupSet const& other) const;
  SubgroupSet intersect(SubgroupSet const& other) const;
  /// H^g = g^-1 H g
  SubgroupSet conjugate(Elem g) const;
  bool is_normal() const;

  friend bool operator==(SubgroupSet const& a, SubgroupSet const& b) {
    return a.members_ == b.members_;
  }
  /// Size first, then element lists lexicographically.
  friend std::strong_ordering operator<=>(SubgroupSet const& a,
                                          SubgroupSet const& b) {
    if (auto c = a.members_.size() <=> b.members_.size(); c != 0) return c;
    return a.members_ <=> b.members_;
  }

 private:
  void index_members();

  FiniteGroup parent_;
  std::vector<Elem> members_{0};
  std::vector<std::uint64_t> bits_{1};
};

// ---------------------------------------------------------------------------
// Construction

FiniteGroup cyclic(std::size_t n);
/// Dihedral group of the given order (2n, n >= 3) acting on n points.
FiniteGroup dihedral(std::size_t order);
FiniteGroup symmetric(std::size_t n);
FiniteGroup alternating(std::size_t n);
FiniteGroup quaternion8();
/// C7 x| C3 acting on 7 points.
FiniteGroup frobenius21();
/// (C_p)^k of the given order p^k.
FiniteGroup elementary_abelian(std::size_t order);
FiniteGroup direct_product(FiniteGroup const& a, FiniteGroup const& b);

/// Builtin families: cyclic, dihedral, symmetric, alternating, quaternion,
/// frobenius, elementary-abelian.
FiniteGroup builtin_group(std::string_view family, std::size_t param);

/// Subgroup H viewed as a group in its own right, labels preserved.
FiniteGroup induced_group(SubgroupSet const& h, std::string name = {});

// ---------------------------------------------------------------------------
// Arithmetic

enum class ArithKind { product, inverse, conjugate, commutator };

/// Range-checked arithmetic: product(a,b), inverse(a), conjugate(a,x),
/// commutator(x,y).
Elem group_arith(FiniteGroup const& g, ArithKind kind, std::span<Elem const> args);

// ---------------------------------------------------------------------------
// Subgroups

/// Least subgroup containing the seeds.
SubgroupSet generate(FiniteGroup const& g, std::span<Elem const> seeds);
inline SubgroupSet generate(FiniteGroup const& g, std::initializer_list<Elem> seeds) {
  return generate(g, std::span<Elem const>(seeds.begin(), seeds.size()));
}

struct SubgroupEntry {
  SubgroupSet subgroup;
  bool normal = false;
};

/// Every subgroup of g, sorted by (size, elements).  Requires
/// order <= limits().lattice_cap.
std::vector<SubgroupEntry> all_subgroups(FiniteGroup const& g);

struct MalnormalityReport {
  bool verdict = true;
  /// g outside H and h != 1 with h in H and in H^g.
  std::optional<std::pair<Elem, Elem>> witness;
};

MalnormalityReport is_malnormal(SubgroupSet const& h);
/// Malnormality of h inside an intermediate subgroup `ambient` (h <= ambient).
MalnormalityReport is_malnormal_in(SubgroupSet const& h, SubgroupSet const& ambient);

SubgroupSet classic_centralizer(FiniteGroup const& g, Elem a);
SubgroupSet center(FiniteGroup const& g);
SubgroupSet normalizer(SubgroupSet const& h);
/// A small generating set, chosen greedily by ascending index.
std::vector<Elem> generating_set(SubgroupSet const& h);

}  // namespace varitas
