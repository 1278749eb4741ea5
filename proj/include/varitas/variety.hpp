#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varitas/group.hpp"
#include "varitas/word.hpp"

namespace varitas {

/// A variety given by a finite basis of laws.  The empty basis is the
/// variety of all groups.
struct VarietySpec {
  std::string name;
  std::vector<FreeWord> basis;
  bool members_nilpotent = false;

  /// Every law has zero exponent sum in each variable, i.e. every abelian
  /// (equivalently every cyclic) group is a member.
  bool contains_all_abelian() const;

  /// abelian, nilpotent-k, metabelian, burnside-n, all.
  static VarietySpec builtin(std::string_view name);
};

/// The five varieties of the default grid.
std::vector<VarietySpec> builtin_varieties();

struct MembershipVerdict {
  bool member = true;
  /// Index into the basis and the violating assignment.
  std::optional<std::pair<std::size_t, std::vector<Elem>>> violated;
  std::uint64_t tuples_checked = 0;
};

/// Every basis word is an identity of the group (or of the subgroup whose
/// members are `domain`).
MembershipVerdict is_member(FiniteGroup const& g, VarietySpec const& x,
                            std::span<Elem const> domain = {},
                            kernels::Mode mode = kernels::Mode::automatic);
inline MembershipVerdict is_member(SubgroupSet const& h, VarietySpec const& x,
                                   kernels::Mode mode = kernels::Mode::automatic) {
  return is_member(h.parent(), x, h.members(), mode);
}

/// Q(a, b) <=> <a, b> in X, memoised per unordered pair.  Subgroup
/// membership results are shared across pairs generating the same subgroup.
/// Safe for concurrent use.
class QTable {
 public:
  QTable(FiniteGroup g, VarietySpec x);

  FiniteGroup const& group() const noexcept { return g_; }
  VarietySpec const& variety() const noexcept { return x_; }

  bool operator()(Elem a, Elem b) const;
  /// Membership of an arbitrary subgroup, memoised by element set.
  bool member(SubgroupSet const& h) const;
  /// Fills the whole pair table (in parallel when enabled).
  void fill() const;

  std::uint64_t subgroups_evaluated() const;

 private:
  FiniteGroup g_;
  VarietySpec x_;
  std::unique_ptr<std::atomic<std::int8_t>[]> pair_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<std::uint64_t>, bool> by_subgroup_;
};

bool q_predicate(FiniteGroup const& g, Elem a, Elem b, VarietySpec const& x);

enum class OracleVerdict { member, non_member, unknown };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::unknown;
  /// For non-members: a law of A that fails at the given generators.
  std::optional<FreeWord> witness_law;
  /// Size of the relatively free object reached.
  std::uint64_t free_order = 0;
  std::string reason;
};

/// Decides whether the group generated by `gens` lies in Var(A) by closing
/// pairs (free-object element, image in G) where the relatively free object
/// of rank d sits inside A^(A^d).  Returns unknown when a cap is hit.
OracleResult var_gen_oracle(FiniteGroup const& a, FiniteGroup const& g,
                            std::span<Elem const> gens);

std::string to_string(OracleVerdict v);

}  // namespace varitas
