#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "varitas/group.hpp"

namespace varitas {

/// The full subgroup lattice of a small group with precomputed joins and
/// meets.  Subgroups are indexed in the order of all_subgroups(), so index 0
/// is the trivial subgroup and the last index is the whole group.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(FiniteGroup g);

  FiniteGroup const& group() const noexcept { return g_; }
  std::size_t size() const noexcept { return subs_.size(); }
  SubgroupSet const& operator[](std::size_t i) const { return subs_[i]; }
  bool is_normal(std::size_t i) const { return normal_[i]; }

  std::size_t trivial() const noexcept { return 0; }
  std::size_t whole() const noexcept { return subs_.size() - 1; }

  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  bool contains(std::size_t outer, std::size_t inner) const {
    return meet(outer, inner) == inner;
  }
  /// Index of <a>.
  std::size_t cyclic(Elem a) const { return cyclic_[a]; }
  /// Index of <a, b>.
  std::size_t pair(Elem a, Elem b) const { return join(cyclic_[a], cyclic_[b]); }

  std::optional<std::size_t> index_of(SubgroupSet const& h) const;
  /// Indices of all subgroups of subgroup `i`, ascending.
  std::vector<std::size_t> const& below(std::size_t i) const { return below_[i]; }

 private:
  FiniteGroup g_;
  std::vector<SubgroupSet> subs_;
  std::vector<bool> normal_;
  std::map<std::vector<std::uint64_t>, std::size_t> by_bits_;
  std::vector<std::uint32_t> join_;
  std::vector<std::uint32_t> meet_;
  std::vector<std::size_t> cyclic_;
  std::vector<std::vector<std::size_t>> below_;
};

}  // namespace varitas
