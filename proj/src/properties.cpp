#include "varitas/properties.hpp"

#include <algorithm>
#include <set>

#include "varitas/config.hpp"
#include "varitas/error.hpp"
#include "varitas/kernels.hpp"

namespace varitas {

std::string to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::centralizer: return "centralizer";
    case Method::condition: return "condition";
    case Method::sentence: return "sentence";
    case Method::definition: return "definition";
    case Method::normal_centralizer: return "normal-centralizer";
  }
  return "direct";
}

Method parse_method(std::string_view text) {
  for (auto m : {Method::direct, Method::centralizer, Method::condition, Method::sentence,
                 Method::definition, Method::normal_centralizer}) {
    if (text == to_string(m)) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(text) + "'");
}

std::optional<Elem> Witness::element(std::string_view role) const {
  for (auto const& [r, e] : elements) {
    if (r == role) return e;
  }
  return std::nullopt;
}

SubgroupSet const* Witness::subgroup(std::string_view role) const {
  for (auto const& [r, h] : subgroups) {
    if (r == role) return &h;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// GroupPredicate and the class operators

GroupPredicate::GroupPredicate(std::string name,
                               std::shared_ptr<SubgroupLattice const> lattice, Fn fn)
    : s_(std::make_shared<State>()) {
  s_->name = std::move(name);
  s_->lattice = std::move(lattice);
  s_->fn = std::move(fn);
  s_->memo.reset(new std::atomic<std::int8_t>[s_->lattice->size()]);
  for (std::size_t i = 0; i < s_->lattice->size(); ++i) {
    s_->memo[i].store(-1, std::memory_order_relaxed);
  }
}

bool GroupPredicate::operator()(std::size_t subgroup) const {
  auto& slot = s_->memo[subgroup];
  std::int8_t v = slot.load(std::memory_order_relaxed);
  if (v < 0) {
    v = s_->fn(subgroup) ? 1 : 0;
    slot.store(v, std::memory_order_relaxed);
  }
  return v == 1;
}

void GroupPredicate::fill() const {
  kernels::for_each_index(static_cast<std::int64_t>(lattice().size()),
                          [&](std::int64_t i) { (*this)(static_cast<std::size_t>(i)); });
}

namespace {

Elem least_nonidentity(SubgroupSet const& h) {
  return h.members().size() > 1 ? h.members()[1] : 0;
}

bool subgroup_is_abelian(SubgroupSet const& h) {
  auto const& g = h.parent();
  for (auto a : h.members()) {
    for (auto b : h.members()) {
      if (b > a && g.mul(a, b) != g.mul(b, a)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::size_t> maximal_subgroups(GroupPredicate const& p,
                                           std::optional<std::size_t> ambient) {
  auto const& lat = p.lattice();
  std::size_t const k = ambient.value_or(lat.whole());
  auto const& below = lat.below(k);
  std::vector<std::size_t> out;
  for (auto i : below) {
    if (!p(i)) continue;
    bool maximal = true;
    for (auto j : below) {
      if (j != i && p(j) && lat.contains(j, i)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

PropertyReport operator_check(GroupPredicate const& p, Op op,
                              std::optional<std::size_t> ambient) {
  auto const& lat = p.lattice();
  std::size_t const k = ambient.value_or(lat.whole());
  PropertyReport r;
  r.check = (op == Op::T ? "T(" : "CS(") + p.name() + ")";
  r.group = lat.group().name();
  r.variety = p.name();
  r.method = Method::direct;
  if (k != lat.whole()) r.stats["ambient_order"] = static_cast<std::int64_t>(lat[k].size());

  if (op == Op::T) {
    auto const& below = lat.below(k);
    std::int64_t pairs = 0;
    for (std::size_t ii = 0; ii < below.size(); ++ii) {
      std::size_t const i = below[ii];
      if (!p(i)) continue;
      for (std::size_t jj = ii + 1; jj < below.size(); ++jj) {
        std::size_t const j = below[jj];
        if (!p(j) || lat.meet(i, j) == lat.trivial()) continue;
        ++pairs;
        std::size_t const joined = lat.join(i, j);
        if (!p(joined)) {
          r.verdict = false;
          Witness w;
          w.subgroups = {{"A", lat[i]}, {"B", lat[j]}, {"join", lat[joined]}};
          w.elements = {{"a", least_nonidentity(lat[lat.meet(i, j)])}};
          r.witness = std::move(w);
          r.stats["pairs_examined"] = pairs;
          return r;
        }
      }
    }
    r.stats["pairs_examined"] = pairs;
    return r;
  }

  auto const maxes = maximal_subgroups(p, k);
  r.stats["maximal_subgroups"] = static_cast<std::int64_t>(maxes.size());
  for (auto m : maxes) {
    auto mr = is_malnormal_in(lat[m], lat[k]);
    if (!mr.verdict) {
      r.verdict = false;
      Witness w;
      w.subgroups = {{"M", lat[m]}};
      w.elements = {{"g", mr.witness->first}, {"h", mr.witness->second}};
      r.witness = std::move(w);
      return r;
    }
  }
  return r;
}

GroupPredicate apply_operator(GroupPredicate const& p, Op op) {
  std::string name = (op == Op::T ? "T(" : "CS(") + p.name() + ")";
  return GroupPredicate(std::move(name), p.lattice_ptr(),
                        [p, op](std::size_t i) { return operator_check(p, op, i).verdict; });
}

// ---------------------------------------------------------------------------
// GroupAnalysis

GroupAnalysis::GroupAnalysis(FiniteGroup g, VarietySpec x)
    : q_(std::make_shared<QTable>(g, std::move(x))) {
  if (g.order() <= limits().lattice_cap) {
    lattice_ = std::make_shared<SubgroupLattice const>(std::move(g));
  }
  init();
}

GroupAnalysis::GroupAnalysis(std::shared_ptr<SubgroupLattice const> lattice, VarietySpec x)
    : q_(std::make_shared<QTable>(lattice->group(), std::move(x))),
      lattice_(std::move(lattice)) {
  init();
}

void GroupAnalysis::init() {
  member_ = is_member(q_->group(), q_->variety());
  if (lattice_) {
    auto q = q_;
    auto lat = lattice_;
    membership_.emplace(q_->variety().name, lattice_,
                        [q, lat](std::size_t i) { return q->member((*lat)[i]); });
    membership_->fill();
  }
}

SubgroupLattice const& GroupAnalysis::lattice() const {
  if (!lattice_) {
    throw BudgetExceeded("subgroup lattice of " + group().name(),
                         static_cast<double>(group().order()),
                         static_cast<double>(limits().lattice_cap));
  }
  return *lattice_;
}

GroupPredicate const& GroupAnalysis::membership() const {
  lattice();
  return *membership_;
}

namespace {

PropertyReport base_report(GroupAnalysis const& a, std::string check, Method m) {
  PropertyReport r;
  r.check = std::move(check);
  r.group = a.group().name();
  r.variety = a.variety().name;
  r.method = m;
  return r;
}

}  // namespace

PropertyReport membership_report(GroupAnalysis const& a) {
  PropertyReport r = base_report(a, "member", Method::direct);
  auto const& m = a.member();
  r.verdict = m.member;
  r.stats["tuples_checked"] = static_cast<std::int64_t>(m.tuples_checked);
  if (!m.member) {
    Witness w;
    w.word = a.variety().basis[m.violated->first];
    w.tuple = m.violated->second;
    r.witness = std::move(w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// X-centralizers, XT and CSX

XCentralizer x_centralizer(GroupAnalysis const& a, Elem elem) {
  auto const& g = a.group();
  g.check_index(elem);
  auto const& q = a.q();
  XCentralizer c;
  for (Elem x = 0; x < g.order(); ++x) {
    if (q(elem, x)) c.elements.push_back(x);
  }
  for (auto x : c.elements) {
    for (auto y : c.elements) {
      if (!q(elem, g.mul(x, y))) {
        c.closed = false;
        c.product_escape = std::make_pair(x, y);
        break;
      }
    }
    if (!c.closed) break;
  }
  c.generated_in_x = q.member(generate(g, c.elements));
  return c;
}

namespace {

struct CentralizerFailure {
  Elem a = 0;
  std::optional<std::pair<Elem, Elem>> escape;
  std::vector<Elem> set;
};

PropertyReport xt_by_centralizers(GroupAnalysis const& a) {
  auto const& g = a.group();
  auto const& q = a.q();
  std::size_t const n = g.order();
  q.fill();
  std::vector<std::optional<CentralizerFailure>> fails(n);
  std::vector<char> empty(n, 0);
  kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t ai) {
    Elem const e = static_cast<Elem>(ai);
    if (e == 0) return;
    std::vector<Elem> c;
    for (Elem x = 0; x < n; ++x) {
      if (q(e, x)) c.push_back(x);
    }
    if (c.empty()) {
      empty[e] = 1;
      return;
    }
    for (auto x : c) {
      for (auto y : c) {
        if (!q(e, g.mul(x, y))) {
          fails[e] = CentralizerFailure{e, std::make_pair(x, y), std::move(c)};
          return;
        }
      }
    }
    if (!q.member(SubgroupSet::unchecked(g, c))) fails[e] = CentralizerFailure{e, {}, std::move(c)};
  });
  PropertyReport r = base_report(a, "xt", Method::centralizer);
  r.stats["empty_centralizers"] = std::count(empty.begin(), empty.end(), 1);
  for (Elem e = 1; e < n; ++e) {
    if (!fails[e]) continue;
    r.verdict = false;
    Witness w;
    w.elements = {{"a", e}};
    if (fails[e]->escape) {
      w.elements.push_back({"x", fails[e]->escape->first});
      w.elements.push_back({"y", fails[e]->escape->second});
      w.note = "C_X(a) is not closed under products";
    } else {
      w.subgroups = {{"C_X(a)", SubgroupSet::unchecked(g, fails[e]->set)}};
      w.note = "C_X(a) is a subgroup outside X";
    }
    r.witness = std::move(w);
    break;
  }
  return r;
}

}  // namespace

PropertyReport is_xt(GroupAnalysis const& a, Method method, std::optional<std::size_t> ambient) {
  if (method == Method::centralizer) {
    if (ambient && (!a.has_lattice() || *ambient != a.lattice().whole())) {
      throw InvalidArgument("the centralizer method works on the whole group only");
    }
    return xt_by_centralizers(a);
  }
  if (method != Method::direct) throw InvalidArgument("is_xt supports direct and centralizer");
  if (!a.has_lattice() && !ambient) {
    PropertyReport r = xt_by_centralizers(a);
    r.stats["fallback"] = 1;
    return r;
  }
  PropertyReport r = operator_check(a.membership(), Op::T, ambient);
  r.check = "xt";
  r.variety = a.variety().name;
  return r;
}

PropertyReport is_csx(GroupAnalysis const& a, Method method, std::optional<std::size_t> ambient) {
  if (method == Method::direct && (a.has_lattice() || ambient)) {
    PropertyReport r = operator_check(a.membership(), Op::CS, ambient);
    r.check = "csx";
    r.variety = a.variety().name;
    return r;
  }
  if (method != Method::direct && method != Method::condition) {
    throw InvalidArgument("is_csx supports direct and condition");
  }
  if (ambient && *ambient != a.lattice().whole()) {
    throw InvalidArgument("the condition method works on the whole group only");
  }
  auto const& g = a.group();
  auto const& q = a.q();
  std::size_t const n = g.order();
  PropertyReport xt = xt_by_centralizers(a);
  std::vector<std::optional<Elem>> bad(n);
  kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t ai) {
    Elem const e = static_cast<Elem>(ai);
    if (e == 0) return;
    for (Elem z = 0; z < n; ++z) {
      if (q(e, g.conj(e, z)) && !q(e, z)) {
        bad[e] = z;
        return;
      }
    }
  });
  PropertyReport r = base_report(a, "csx", Method::condition);
  if (method == Method::direct) r.stats["fallback"] = 1;
  std::optional<std::pair<Elem, Elem>> violation;
  for (Elem e = 1; e < n && !violation; ++e) {
    if (bad[e]) violation = std::make_pair(e, *bad[e]);
  }
  r.stats["xt"] = xt.verdict;
  r.stats["condition_holds"] = !violation;
  r.verdict = xt.verdict && !violation;
  if (violation) {
    Witness w;
    w.elements = {{"a", violation->first}, {"z", violation->second}};
    w.note = "<a, a^z> lies in X but <a, z> does not";
    r.witness = std::move(w);
  } else if (!xt.verdict) {
    r.witness = xt.witness;
    r.witness->note = "not XT: " + r.witness->note;
  }
  return r;
}

std::vector<SubgroupSet> maximal_x_subgroups(GroupAnalysis const& a) {
  std::vector<SubgroupSet> out;
  for (auto i : maximal_subgroups(a.membership())) out.push_back(a.lattice()[i]);
  return out;
}

PropertyReport maximal_intersections_trivial(GroupAnalysis const& a) {
  auto const& lat = a.lattice();
  auto const maxes = maximal_subgroups(a.membership());
  PropertyReport r = base_report(a, "maximal-intersections", Method::direct);
  r.stats["maximal_subgroups"] = static_cast<std::int64_t>(maxes.size());
  for (std::size_t i = 0; i < maxes.size(); ++i) {
    for (std::size_t j = i + 1; j < maxes.size(); ++j) {
      std::size_t const m = lat.meet(maxes[i], maxes[j]);
      if (m != lat.trivial()) {
        r.verdict = false;
        Witness w;
        w.subgroups = {{"M1", lat[maxes[i]]}, {"M2", lat[maxes[j]]}};
        w.elements = {{"a", least_nonidentity(lat[m])}};
        r.witness = std::move(w);
        return r;
      }
    }
  }
  return r;
}

PropertyReport weak_transitivity(GroupAnalysis const& a) {
  auto const& lat = a.lattice();
  auto const& p = a.membership();
  PropertyReport r = base_report(a, "weak-transitivity", Method::direct);
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!p(i)) continue;
    for (std::size_t j = i + 1; j < lat.size(); ++j) {
      if (!p(j)) continue;
      std::size_t const m = lat.meet(i, j);
      if (subgroup_is_abelian(lat[m])) continue;
      ++pairs;
      std::size_t const joined = lat.join(i, j);
      if (!p(joined)) {
        r.verdict = false;
        Witness w;
        w.subgroups = {{"A", lat[i]}, {"B", lat[j]}, {"join", lat[joined]}};
        r.witness = std::move(w);
        r.stats["pairs_examined"] = pairs;
        return r;
      }
    }
  }
  r.stats["pairs_examined"] = pairs;
  return r;
}

// ---------------------------------------------------------------------------
// Partition count

PartitionCountReport verify_partition_count(FiniteGroup const& g,
                                            std::span<SubgroupSet const> reps) {
  PartitionCountReport r;
  r.lhs = static_cast<std::int64_t>(g.order()) - 1;
  for (auto const& m : reps) {
    if (!m.parent().same_as(g)) throw InvalidArgument("representative is not a subgroup of the group");
    if (m.is_trivial() || m.is_whole()) {
      throw InvalidArgument("representatives must be nontrivial proper subgroups");
    }
  }
  std::vector<int> cover(g.order(), 0);
  for (auto const& m : reps) {
    std::set<std::vector<Elem>> conjugates;
    for (Elem x = 0; x < g.order(); ++x) conjugates.insert(m.conjugate(x).members());
    for (auto const& c : conjugates) {
      for (auto e : c) ++cover[e];
    }
    std::int64_t const index =
        static_cast<std::int64_t>(g.order() / normalizer(m).size());
    std::int64_t const term = index * (static_cast<std::int64_t>(m.size()) - 1);
    r.terms.push_back(term);
    r.rhs += term;
    if (!is_malnormal(m).verdict) r.malnormal_ok = false;
  }
  for (Elem e = 1; e < g.order(); ++e) {
    if (cover[e] != 1) r.partition_ok = false;
  }
  r.count_identity_ok = r.lhs == r.rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Zero divisors

namespace {

std::vector<Elem> conjugacy_class(FiniteGroup const& g, Elem x) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> out;
  for (Elem y = 0; y < g.order(); ++y) {
    Elem const c = g.conj(x, y);
    if (!seen[c]) {
      seen[c] = 1;
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// least y != 1 commuting with every element of `set`
std::optional<Elem> least_centralizing(FiniteGroup const& g, std::vector<Elem> const& set) {
  for (Elem y = 1; y < g.order(); ++y) {
    bool ok = true;
    for (auto c : set) {
      if (g.mul(c, y) != g.mul(y, c)) {
        ok = false;
        break;
      }
    }
    if (ok) return y;
  }
  return std::nullopt;
}

}  // namespace

ZeroDivisorReport zero_divisor_scan(FiniteGroup const& g, Method method) {
  std::size_t const n = g.order();
  ZeroDivisorReport out;
  PropertyReport& r = out.report;
  r.check = "domain";
  r.group = g.name();
  r.method = method;
  std::vector<std::optional<Elem>> partner(n);

  if (method == Method::definition) {
    kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t xi) {
      Elem const x = static_cast<Elem>(xi);
      if (x == 0) return;
      for (Elem y = 1; y < n; ++y) {
        bool ok = true;
        for (Elem h = 0; h < n && ok; ++h) ok = g.comm(g.conj(x, h), y) == 0;
        if (ok) {
          partner[x] = y;
          return;
        }
      }
    });
    for (Elem x = 1; x < n; ++x) {
      if (!partner[x]) continue;
      out.zero_divisors.push_back(x);
      if (r.verdict) {
        r.verdict = false;
        Witness w;
        w.elements = {{"x", x}, {"y", *partner[x]}};
        r.witness = std::move(w);
      }
    }
  } else if (method == Method::normal_centralizer) {
    if (n > limits().lattice_cap) {
      throw BudgetExceeded("normal subgroups of " + g.name(), static_cast<double>(n),
                           static_cast<double>(limits().lattice_cap));
    }
    std::int64_t normals = 0;
    for (auto const& e : all_subgroups(g)) {
      if (!e.normal || e.subgroup.is_trivial()) continue;
      ++normals;
      if (auto y = least_centralizing(g, e.subgroup.members()); y && r.verdict) {
        r.verdict = false;
        Witness w;
        w.subgroups = {{"K", e.subgroup}};
        w.elements = {{"y", *y}};
        r.witness = std::move(w);
      }
    }
    r.stats["normal_subgroups"] = normals;
    // x is a zero divisor exactly when its normal closure has a nontrivial
    // centralizer
    kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t xi) {
      Elem const x = static_cast<Elem>(xi);
      if (x == 0) return;
      partner[x] = least_centralizing(g, generate(g, conjugacy_class(g, x)).members());
    });
    for (Elem x = 1; x < n; ++x) {
      if (partner[x]) out.zero_divisors.push_back(x);
    }
  } else {
    throw InvalidArgument("zero_divisor_scan supports definition and normal-centralizer");
  }
  r.stats["zero_divisors"] = static_cast<std::int64_t>(out.zero_divisors.size());
  return out;
}

// ---------------------------------------------------------------------------
// Universal sentences

bool SentenceReport::xt() const {
  if (!sub_x.verdict) return false;
  for (auto const& s : xn) {
    if (!s.verdict) return false;
  }
  return true;
}

namespace {

// least nondecreasing tuple over `c` whose generated subgroup is outside X
bool xn_search(FiniteGroup const& g, QTable const& q, std::vector<Elem> const& c, int n,
               std::vector<Elem>& tuple, std::size_t from) {
  if (static_cast<int>(tuple.size()) == n) return !q.member(generate(g, tuple));
  for (std::size_t i = from; i < c.size(); ++i) {
    tuple.push_back(c[i]);
    if (xn_search(g, q, c, n, tuple, i)) return true;
    tuple.pop_back();
  }
  return false;
}

}  // namespace

SentenceReport eval_universal_sentences(GroupAnalysis const& a, int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be positive");
  auto const& g = a.group();
  auto const& q = a.q();
  std::size_t const n = g.order();
  std::uint64_t const required = tuple_count(n, static_cast<std::uint32_t>(n_max) + 1);
  if (required > limits().budget) {
    throw BudgetExceeded("universal sentences on " + g.name(), static_cast<double>(required),
                         static_cast<double>(limits().budget));
  }
  q.fill();
  SentenceReport out;

  out.sub_x = base_report(a, "sub_x", Method::sentence);
  {
    std::vector<std::optional<std::pair<Elem, Elem>>> bad(n);
    kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t xi) {
      Elem const x = static_cast<Elem>(xi);
      if (x == 0) return;
      for (Elem y = 0; y < n; ++y) {
        if (!q(x, y)) continue;
        for (Elem z = 0; z < n; ++z) {
          if (q(x, z) && !q(x, g.mul(g.inv(y), z))) {
            bad[x] = std::make_pair(y, z);
            return;
          }
        }
      }
    });
    for (Elem x = 1; x < n; ++x) {
      if (!bad[x]) continue;
      out.sub_x.verdict = false;
      Witness w;
      w.elements = {{"x", x}, {"y", bad[x]->first}, {"z", bad[x]->second}};
      out.sub_x.witness = std::move(w);
      break;
    }
  }

  out.mal_x = base_report(a, "mal_x", Method::sentence);
  {
    std::vector<std::optional<Elem>> bad(n);
    kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t xi) {
      Elem const x = static_cast<Elem>(xi);
      if (x == 0) return;
      for (Elem z = 0; z < n; ++z) {
        if (q(x, g.conj(x, z)) && !q(x, z)) {
          bad[x] = z;
          return;
        }
      }
    });
    for (Elem x = 1; x < n; ++x) {
      if (!bad[x]) continue;
      out.mal_x.verdict = false;
      Witness w;
      w.elements = {{"x", x}, {"z", *bad[x]}};
      out.mal_x.witness = std::move(w);
      break;
    }
  }

  for (int k = 1; k <= n_max; ++k) {
    PropertyReport r = base_report(a, "x^" + std::to_string(k), Method::sentence);
    std::vector<std::optional<std::vector<Elem>>> bad(n);
    kernels::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t xi) {
      Elem const x = static_cast<Elem>(xi);
      if (x == 0) return;
      std::vector<Elem> c;
      for (Elem y = 0; y < n; ++y) {
        if (q(x, y)) c.push_back(y);
      }
      std::vector<Elem> tuple;
      if (xn_search(g, q, c, k, tuple, 0)) bad[x] = std::move(tuple);
    });
    for (Elem x = 1; x < n; ++x) {
      if (!bad[x]) continue;
      r.verdict = false;
      Witness w;
      w.elements = {{"x", x}};
      w.tuple = *bad[x];
      r.witness = std::move(w);
      break;
    }
    out.xn.push_back(std::move(r));
  }
  return out;
}

}  // namespace varitas
