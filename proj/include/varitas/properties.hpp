#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varitas/group.hpp"
#include "varitas/lattice.hpp"
#include "varitas/variety.hpp"
#include "varitas/word.hpp"

namespace varitas {

enum class Method {
  direct,
  centralizer,
  condition,
  sentence,
  definition,
  normal_centralizer,
};

std::string to_string(Method m);
/// Accepts the names printed by to_string ("normal-centralizer" etc.).
Method parse_method(std::string_view text);

/// A structured counterexample.  Roles name what each entry is ("a", "x",
/// "M", "join", ...).
struct Witness {
  std::vector<std::pair<std::string, Elem>> elements;
  std::vector<std::pair<std::string, SubgroupSet>> subgroups;
  std::optional<FreeWord> word;
  std::vector<Elem> tuple;
  std::string note;

  std::optional<Elem> element(std::string_view role) const;
  SubgroupSet const* subgroup(std::string_view role) const;
};

struct PropertyReport {
  std::string check;
  std::string group;
  std::string variety;
  Method method = Method::direct;
  bool verdict = true;
  std::optional<Witness> witness;
  std::map<std::string, std::int64_t> stats;
};

/// A deterministic class-membership test on the subgroups of one lattice,
/// memoised per subgroup.  Copies share the memo.
class GroupPredicate {
 public:
  using Fn = std::function<bool(std::size_t)>;

  GroupPredicate(std::string name, std::shared_ptr<SubgroupLattice const> lattice, Fn fn);

  bool operator()(std::size_t subgroup) const;
  std::string const& name() const noexcept { return s_->name; }
  SubgroupLattice const& lattice() const noexcept { return *s_->lattice; }
  std::shared_ptr<SubgroupLattice const> const& lattice_ptr() const noexcept {
    return s_->lattice;
  }
  /// Evaluates every subgroup up front (in parallel when enabled).
  void fill() const;

 private:
  struct State {
    std::string name;
    std::shared_ptr<SubgroupLattice const> lattice;
    Fn fn;
    std::unique_ptr<std::atomic<std::int8_t>[]> memo;
  };
  std::shared_ptr<State> s_;
};

enum class Op { T, CS };

/// T(P) at K: any two P-subgroups of K meeting nontrivially generate a
/// P-subgroup.  CS(P) at K: every maximal P-subgroup of K is malnormal in K.
PropertyReport operator_check(GroupPredicate const& p, Op op,
                              std::optional<std::size_t> ambient = std::nullopt);
/// The predicate K -> operator_check(p, op, K).verdict.
GroupPredicate apply_operator(GroupPredicate const& p, Op op);
/// Maximal P-subgroups of K (default: the whole group), ascending.
std::vector<std::size_t> maximal_subgroups(GroupPredicate const& p,
                                           std::optional<std::size_t> ambient = std::nullopt);

/// A group together with a variety: the Q table and, when the order allows
/// it, the subgroup lattice with its membership predicate.
class GroupAnalysis {
 public:
  GroupAnalysis(FiniteGroup g, VarietySpec x);
  /// Shares an existing lattice (and its group).
  GroupAnalysis(std::shared_ptr<SubgroupLattice const> lattice, VarietySpec x);

  FiniteGroup const& group() const noexcept { return q_->group(); }
  VarietySpec const& variety() const noexcept { return q_->variety(); }
  QTable const& q() const noexcept { return *q_; }

  bool has_lattice() const noexcept { return lattice_ != nullptr; }
  /// Throws BudgetExceeded when the group is over the lattice cap.
  SubgroupLattice const& lattice() const;
  std::shared_ptr<SubgroupLattice const> const& lattice_ptr() const noexcept { return lattice_; }
  /// Membership in the variety on lattice indices.
  GroupPredicate const& membership() const;

  MembershipVerdict const& member() const noexcept { return member_; }

 private:
  void init();

  std::shared_ptr<QTable> q_;
  std::shared_ptr<SubgroupLattice const> lattice_;
  std::optional<GroupPredicate> membership_;
  MembershipVerdict member_;
};

PropertyReport membership_report(GroupAnalysis const& a);

struct XCentralizer {
  std::vector<Elem> elements;
  bool closed = true;
  /// x, y in the set with xy outside it (least such pair).
  std::optional<std::pair<Elem, Elem>> product_escape;
  /// Whether the subgroup generated by the set lies in X.
  bool generated_in_x = true;
};

XCentralizer x_centralizer(GroupAnalysis const& a, Elem elem);

/// direct: joins of X-subgroups meeting nontrivially; centralizer: every
/// C_X(a), a != 1, is empty or an X-subgroup.  `ambient` (direct only)
/// evaluates the property on a subgroup of the lattice.
PropertyReport is_xt(GroupAnalysis const& a, Method method = Method::direct,
                     std::optional<std::size_t> ambient = std::nullopt);

/// direct: maximal X-subgroups are malnormal; condition: XT together with
/// <a, a^z> in X => <a, z> in X.  The condition method records "xt" and
/// "condition_holds" in stats.
PropertyReport is_csx(GroupAnalysis const& a, Method method = Method::direct,
                      std::optional<std::size_t> ambient = std::nullopt);

std::vector<SubgroupSet> maximal_x_subgroups(GroupAnalysis const& a);

/// Distinct maximal X-subgroups pairwise intersect trivially.
PropertyReport maximal_intersections_trivial(GroupAnalysis const& a);

/// X-subgroups A, B whose intersection is not abelian generate an
/// X-subgroup.
PropertyReport weak_transitivity(GroupAnalysis const& a);

struct PartitionCountReport {
  bool partition_ok = true;
  bool malnormal_ok = true;
  bool count_identity_ok = true;
  std::int64_t lhs = 0;  // |G| - 1
  std::int64_t rhs = 0;  // sum of [G : N(M)] (|M| - 1)
  std::vector<std::int64_t> terms;
};

/// Throws InvalidArgument unless every representative is a nontrivial
/// proper subgroup.
PartitionCountReport verify_partition_count(FiniteGroup const& g,
                                            std::span<SubgroupSet const> reps);

struct ZeroDivisorReport {
  PropertyReport report;  // verdict: the group is an equational domain
  std::vector<Elem> zero_divisors;
};

/// definition: x != 1 with some y != 1 and [x^g, y] = 1 for all g.
/// normal-centralizer: every nontrivial normal subgroup has trivial
/// centralizer.
ZeroDivisorReport zero_divisor_scan(FiniteGroup const& g, Method method = Method::definition);

struct SentenceReport {
  PropertyReport sub_x;
  PropertyReport mal_x;
  std::vector<PropertyReport> xn;  // xn[k] is the sentence for n = k + 1

  bool xt() const;
  bool csx() const { return xt() && mal_x.verdict; }
};

/// Evaluates Sub_X, Mal_X and X^1..X^n_max.  X^n reads: for x != 1 and
/// x1..xn in C_X(x), the subgroup <x1, ..., xn> lies in X.
SentenceReport eval_universal_sentences(GroupAnalysis const& a, int n_max);

}  // namespace varitas
