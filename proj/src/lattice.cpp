#include "varitas/lattice.hpp"

#include "varitas/error.hpp"

namespace varitas {

SubgroupLattice::SubgroupLattice(FiniteGroup g) : g_(std::move(g)) {
  for (auto& e : all_subgroups(g_)) {
    by_bits_.emplace(e.subgroup.bits(), subs_.size());
    normal_.push_back(e.normal);
    subs_.push_back(std::move(e.subgroup));
  }
  std::size_t const n = subs_.size();
  std::vector<char> sub(n * n, 0);  // sub[k * n + i]: subgroup i lies in k
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= k; ++i) sub[k * n + i] = subs_[i].is_subset_of(subs_[k]);
  }
  join_.assign(n * n, 0);
  meet_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      // sorted by size, so the first common upper bound is the join
      std::size_t k = j;
      while (!(sub[k * n + i] && sub[k * n + j])) ++k;
      join_[i * n + j] = join_[j * n + i] = static_cast<std::uint32_t>(k);
      std::size_t const m = by_bits_.at(subs_[i].intersect(subs_[j]).bits());
      meet_[i * n + j] = meet_[j * n + i] = static_cast<std::uint32_t>(m);
    }
  }
  cyclic_.resize(g_.order());
  for (Elem a = 0; a < g_.order(); ++a) cyclic_[a] = by_bits_.at(generate(g_, {a}).bits());
  below_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      if (sub[k * n + i]) below_[k].push_back(i);
    }
  }
}

std::optional<std::size_t> SubgroupLattice::index_of(SubgroupSet const& h) const {
  if (!h.parent().same_as(g_)) return std::nullopt;
  auto it = by_bits_.find(h.bits());
  if (it == by_bits_.end()) return std::nullopt;
  return it->second;
}

}  // namespace varitas
