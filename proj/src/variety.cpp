#include "varitas/variety.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "varitas/config.hpp"
#include "varitas/error.hpp"

namespace varitas {

bool VarietySpec::contains_all_abelian() const {
  for (auto const& w : basis) {
    for (auto s : w.exponent_sums()) {
      if (s != 0) return false;
    }
  }
  return true;
}

namespace {

int parse_param(std::string_view name, std::string_view text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 1) {
    throw InvalidArgument("bad parameter in variety name '" + std::string(name) + "'");
  }
  return v;
}

}  // namespace

VarietySpec VarietySpec::builtin(std::string_view name) {
  VarietySpec x;
  x.name = std::string(name);
  if (name == "all") return x;
  if (name == "abelian") {
    x.basis = {standard_word(StandardKind::abelian)};
    x.members_nilpotent = true;
    return x;
  }
  if (name == "metabelian") {
    x.basis = {standard_word(StandardKind::metabelian)};
    return x;
  }
  constexpr std::string_view nil = "nilpotent-";
  constexpr std::string_view burn = "burnside-";
  if (name.starts_with(nil)) {
    x.basis = {standard_word(StandardKind::nilpotent, parse_param(name, name.substr(nil.size())))};
    x.members_nilpotent = true;
    return x;
  }
  if (name.starts_with(burn)) {
    int const n = parse_param(name, name.substr(burn.size()));
    x.basis = {standard_word(StandardKind::burnside, n)};
    // exponent 1 or 2 forces an abelian group
    x.members_nilpotent = n <= 2;
    return x;
  }
  throw InvalidArgument("unknown variety '" + std::string(name) + "'");
}

std::vector<VarietySpec> builtin_varieties() {
  std::vector<VarietySpec> out;
  for (auto n : {"abelian", "nilpotent-2", "nilpotent-3", "metabelian", "burnside-2"}) {
    out.push_back(VarietySpec::builtin(n));
  }
  return out;
}

MembershipVerdict is_member(FiniteGroup const& g, VarietySpec const& x,
                            std::span<Elem const> domain, kernels::Mode mode) {
  MembershipVerdict v;
  for (std::size_t i = 0; i < x.basis.size(); ++i) {
    IdentityVerdict id = is_identity(g, x.basis[i], domain, mode);
    v.tuples_checked += id.tuples_checked;
    if (!id.holds) {
      v.member = false;
      v.violated = std::make_pair(i, std::move(*id.counterexample));
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// QTable

QTable::QTable(FiniteGroup g, VarietySpec x)
    : g_(std::move(g)),
      x_(std::move(x)),
      pair_(new std::atomic<std::int8_t>[g_.order() * g_.order()]) {
  for (std::size_t i = 0; i < g_.order() * g_.order(); ++i) {
    pair_[i].store(-1, std::memory_order_relaxed);
  }
}

bool QTable::member(SubgroupSet const& h) const {
  {
    std::lock_guard lock(mutex_);
    auto it = by_subgroup_.find(h.bits());
    if (it != by_subgroup_.end()) return it->second;
  }
  bool const m = is_member(h, x_, kernels::Mode::serial).member;
  std::lock_guard lock(mutex_);
  by_subgroup_.emplace(h.bits(), m);
  return m;
}

bool QTable::operator()(Elem a, Elem b) const {
  if (a > b) std::swap(a, b);
  auto& slot = pair_[static_cast<std::size_t>(a) * g_.order() + b];
  std::int8_t v = slot.load(std::memory_order_relaxed);
  if (v < 0) {
    v = member(generate(g_, {a, b})) ? 1 : 0;
    slot.store(v, std::memory_order_relaxed);
  }
  return v == 1;
}

void QTable::fill() const {
  kernels::for_each_index(static_cast<std::int64_t>(g_.order()), [&](std::int64_t a) {
    for (Elem b = static_cast<Elem>(a); b < g_.order(); ++b) (*this)(static_cast<Elem>(a), b);
  });
}

std::uint64_t QTable::subgroups_evaluated() const {
  std::lock_guard lock(mutex_);
  return by_subgroup_.size();
}

bool q_predicate(FiniteGroup const& g, Elem a, Elem b, VarietySpec const& x) {
  g.check_index(a);
  g.check_index(b);
  return is_member(generate(g, {a, b}), x).member;
}

// ---------------------------------------------------------------------------
// Var(A) oracle

namespace {

struct VecHash {
  std::size_t operator()(std::vector<Elem> const& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::string to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::member: return "member";
    case OracleVerdict::non_member: return "non-member";
    case OracleVerdict::unknown: return "unknown";
  }
  return "unknown";
}

OracleResult var_gen_oracle(FiniteGroup const& a, FiniteGroup const& g,
                            std::span<Elem const> gens) {
  for (auto x : gens) g.check_index(x);
  OracleResult r;
  std::size_t const d = gens.size();
  if (d == 0) {
    r.verdict = OracleVerdict::member;
    r.free_order = 1;
    return r;
  }
  std::uint64_t const points = tuple_count(a.order(), static_cast<std::uint32_t>(d));
  if (points > limits().oracle_cap) {
    r.reason = "|A|^d = " + std::to_string(points) + " exceeds the oracle cap";
    return r;
  }
  // keep the stored coordinates within a few hundred megabytes
  std::uint64_t const state_cap =
      std::min<std::uint64_t>(limits().oracle_closure_cap, (std::uint64_t{1} << 26) / points);

  // coordinate projections: generator i sends the point p to its i-th entry
  std::vector<std::vector<Elem>> proj(d, std::vector<Elem>(points));
  for (std::uint64_t p = 0; p < points; ++p) {
    kernels::Odometer od(static_cast<std::uint32_t>(a.order()), static_cast<std::uint32_t>(d), p);
    for (std::size_t i = 0; i < d; ++i) proj[i][p] = od[i];
  }

  struct State {
    Elem image;
    std::uint32_t parent;
    std::uint32_t gen;
  };
  std::vector<std::vector<Elem>> elems{std::vector<Elem>(points, 0)};
  std::vector<State> states{{0, 0, 0}};
  std::unordered_map<std::vector<Elem>, std::uint32_t, VecHash> index;
  index.emplace(elems[0], 0);

  auto word_of = [&](std::uint32_t s) {
    std::vector<Syllable> syl;
    while (s != 0) {
      syl.push_back({states[s].gen + 1, 1});
      s = states[s].parent;
    }
    std::reverse(syl.begin(), syl.end());
    return FreeWord(std::move(syl));
  };

  for (std::uint32_t s = 0; s < states.size(); ++s) {
    for (std::uint32_t i = 0; i < d; ++i) {
      std::vector<Elem> f(points);
      for (std::uint64_t p = 0; p < points; ++p) f[p] = a.mul(elems[s][p], proj[i][p]);
      Elem const image = g.mul(states[s].image, gens[i]);
      auto it = index.find(f);
      if (it != index.end()) {
        if (states[it->second].image != image) {
          r.verdict = OracleVerdict::non_member;
          r.witness_law = word_of(s) * FreeWord::variable(i + 1) * word_of(it->second).inverse();
          r.free_order = states.size();
          return r;
        }
        continue;
      }
      if (states.size() >= state_cap) {
        r.reason = "relatively free object exceeds " + std::to_string(state_cap) + " elements";
        r.free_order = states.size();
        return r;
      }
      index.emplace(f, static_cast<std::uint32_t>(states.size()));
      elems.push_back(std::move(f));
      states.push_back({image, s, i});
    }
  }
  r.verdict = OracleVerdict::member;
  r.free_order = states.size();
  return r;
}

}  // namespace varitas
