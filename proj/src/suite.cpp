#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "varitas/error.hpp"
#include "varitas/freeprod.hpp"
#include "varitas/io.hpp"
#include "varitas/kernels.hpp"
#include "varitas/lattice.hpp"
#include "varitas/report.hpp"
#include "varitas/variety.hpp"
#include "varitas/word.hpp"

namespace varitas {

namespace {

std::vector<std::string> const kProperties = {
    "freeprod.amalgam-coherence",
    "freeprod.d2p-csx-not-xt",
    "freeprod.homomorphism",
    "freeprod.length-subadditive",
    "freeprod.normal-form",
    "freeprod.power-conjugacy",
    "group.associativity",
    "group.generate-idempotent",
    "group.malnormal-cross-check",
    "group.malnormal-transitive",
    "group.orbit-stabilizer",
    "properties.centerless-marginal",
    "properties.csx-dual",
    "properties.csx-finite",
    "properties.decomposability",
    "properties.domain-methods",
    "properties.maximal-intersections",
    "properties.maximality",
    "properties.nilpotent-csx-xt",
    "properties.operator-idempotence",
    "properties.partition-count",
    "properties.sentences",
    "properties.subgroup-closure",
    "properties.weak-transitivity",
    "properties.xt-dual",
    "varieties.abelian-table",
    "varieties.monotone",
    "varieties.oracle-consistency",
    "varieties.q-symmetric",
    "words.commutator-marginal-center",
    "words.free-reduction",
    "words.marginal-law",
    "words.normal-subgroups",
    "words.round-trip",
    "words.verbal-law",
};

class Ctx {
 public:
  explicit Ctx(SuiteOptions const& opts) : opts_(opts) {}

  bool want(std::string const& prop) const {
    if (opts_.only.empty()) return true;
    return std::any_of(opts_.only.begin(), opts_.only.end(),
                       [&](std::string const& p) { return prop.starts_with(p); });
  }
  void check(std::string const& prop, std::string const& cell, bool ok, std::string const& detail = {}) {
    auto& item = item_for(prop);
    if (ok) {
      ++item.passed;
      return;
    }
    ++item.failed;
    item.failures.push_back(cell + (detail.empty() ? "" : ": " + detail));
  }
  void skip(std::string const& prop) { ++item_for(prop).skipped; }
  std::map<std::string, SuiteItem>& items() { return items_; }

 private:
  SuiteItem& item_for(std::string const& prop) {
    auto& item = items_[prop];
    item.property = prop;
    return item;
  }

  SuiteOptions const& opts_;
  std::map<std::string, SuiteItem> items_;
};

std::string cell(FiniteGroup const& g, VarietySpec const& x) { return g.name() + "/" + x.name; }

FreeWord random_word(std::mt19937& rng, std::uint32_t arity, int max_syllables) {
  std::uniform_int_distribution<int> count(0, max_syllables);
  std::uniform_int_distribution<std::uint32_t> var(1, arity);
  std::uniform_int_distribution<int> exp(-3, 3);
  std::vector<Syllable> s;
  for (int i = count(rng); i > 0; --i) {
    int e = exp(rng);
    if (e == 0) e = 1;
    s.push_back({var(rng), e});
  }
  return FreeWord(std::move(s));
}

Elem eval_raw(FiniteGroup const& g, std::vector<Syllable> const& raw, std::vector<Elem> const& vals) {
  Elem acc = 0;
  for (auto const& s : raw) acc = g.mul(acc, g.pow(vals[s.var - 1], s.exp));
  return acc;
}

// basis words of the built-in varieties, deduplicated
std::vector<FreeWord> basis_words() {
  std::set<FreeWord> seen;
  for (auto const& x : builtin_varieties()) seen.insert(x.basis.begin(), x.basis.end());
  return {seen.begin(), seen.end()};
}

VarietySpec cyclic_variety(std::size_t n) {
  VarietySpec x;
  x.name = "var-C" + std::to_string(n);
  x.basis = {parse_word("[x1,x2]"), parse_word("x1^" + std::to_string(n))};
  return x;
}

// ---------------------------------------------------------------------------
// group-core

void group_checks(Ctx& c, SubgroupLattice const& lat) {
  auto const& g = lat.group();
  std::size_t const n = g.order();
  auto const& name = g.name();

  if (c.want("group.associativity")) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) {
      for (Elem b = 0; b < n && ok; ++b) {
        Elem const ab = g.mul(a, b);
        for (Elem x = 0; x < n && ok; ++x) ok = g.mul(ab, x) == g.mul(a, g.mul(b, x));
      }
    }
    c.check("group.associativity", name, ok);
  }
  if (c.want("group.orbit-stabilizer")) {
    bool ok = true;
    for (Elem a = 0; a < n; ++a) {
      std::vector<bool> seen(n, false);
      std::size_t cls = 0;
      for (Elem x = 0; x < n; ++x) {
        Elem const y = g.conj(a, x);
        if (!seen[y]) seen[y] = true, ++cls;
      }
      if (cls * classic_centralizer(g, a).size() != n) {
        ok = false;
        c.check("group.orbit-stabilizer", name, false, "element " + g.label(a));
        break;
      }
    }
    if (ok) c.check("group.orbit-stabilizer", name, true);
  }
  if (c.want("group.generate-idempotent")) {
    bool ok = true;
    for (std::size_t i = 0; i < lat.size(); ++i) ok = ok && generate(g, lat[i].members()) == lat[i];
    c.check("group.generate-idempotent", name, ok);
  }
  if (c.want("group.malnormal-cross-check")) {
    bool ok = true;
    for (std::size_t i = 0; i < lat.size() && ok; ++i) {
      auto const& h = lat[i];
      bool alt = true;
      for (Elem x = 0; x < n && alt; ++x) {
        auto meet = h.intersect(h.conjugate(x));
        if (meet.is_trivial()) continue;
        alt = meet == h && h.contains(x);
      }
      auto r = is_malnormal(h);
      ok = r.verdict == alt && r.witness.has_value() == !r.verdict;
    }
    c.check("group.malnormal-cross-check", name, ok);
  }
  if (c.want("group.malnormal-transitive")) {
    bool ok = true;
    for (std::size_t i = 0; i < lat.size() && ok; ++i) {
      if (!is_malnormal(lat[i]).verdict) continue;
      for (auto k : lat.below(i)) {
        if (is_malnormal_in(lat[k], lat[i]).verdict && !is_malnormal(lat[k]).verdict) {
          ok = false;
          break;
        }
      }
    }
    c.check("group.malnormal-transitive", name, ok);
  }
}

// ---------------------------------------------------------------------------
// words and varieties

void word_checks(Ctx& c, FiniteGroup const& g, std::size_t seed) {
  auto const& name = g.name();
  if (c.want("words.commutator-marginal-center")) {
    std::vector<FreeWord> comm{parse_word("[x1,x2]")};
    c.check("words.commutator-marginal-center", name, marginal_subgroup(g, comm) == center(g));
  }
  bool const marg = c.want("words.marginal-law"), verb = c.want("words.verbal-law"),
             normal = c.want("words.normal-subgroups");
  if (marg || verb || normal) {
    for (auto const& w : basis_words()) {
      std::string const where = name + "/" + print_word(w);
      std::vector<FreeWord> ws{w};
      bool const holds = is_identity(g, w).holds;
      auto m = marginal_subgroup(g, ws);
      auto v = verbal_subgroup(g, ws);
      if (marg) c.check("words.marginal-law", where, m.is_whole() == holds);
      if (verb) c.check("words.verbal-law", where, v.is_trivial() == holds);
      if (normal) c.check("words.normal-subgroups", where, m.is_normal() && v.is_normal());
    }
  }
  if (c.want("words.free-reduction")) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    bool ok = true;
    for (int i = 0; i < 50 && ok; ++i) {
      FreeWord w = random_word(rng, 3, 8);
      std::vector<Syllable> raw = w.syllables();
      std::uniform_int_distribution<std::size_t> at(0, raw.size());
      std::uint32_t const k = 1 + static_cast<std::uint32_t>(i % 3);
      raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(at(rng)), {{k, 2}, {k, -2}});
      std::vector<Elem> vals{pick(rng), pick(rng), pick(rng)};
      ok = FreeWord(raw) == w && evaluate_word(g, w, vals) == eval_raw(g, raw, vals);
    }
    c.check("words.free-reduction", name, ok);
  }
  if (c.want("varieties.abelian-table")) {
    bool sym = true;
    for (Elem a = 0; a < g.order(); ++a) {
      for (Elem b = 0; b < g.order(); ++b) sym = sym && g.mul(a, b) == g.mul(b, a);
    }
    c.check("varieties.abelian-table", name, is_member(g, VarietySpec::builtin("abelian")).member == sym);
  }
  if (c.want("varieties.q-symmetric")) {
    for (auto const& x : builtin_varieties()) {
      QTable q(g, x);
      bool ok = true;
      for (Elem a = 0; a < g.order() && ok; ++a) {
        for (Elem b = a + 1; b < g.order() && ok; ++b) ok = q(a, b) == q(b, a);
      }
      c.check("varieties.q-symmetric", cell(g, x), ok);
    }
  }
  if (c.want("varieties.oracle-consistency")) {
    auto gens = generating_set(SubgroupSet::whole(g));
    for (std::size_t n : {2, 3, 4, 6}) {
      auto r = var_gen_oracle(cyclic(n), g, gens);
      auto const x = cyclic_variety(n);
      if (r.verdict == OracleVerdict::unknown) {
        c.skip("varieties.oracle-consistency");
        continue;
      }
      bool ok = (r.verdict == OracleVerdict::member) == is_member(g, x).member;
      if (r.witness_law) {
        ok = ok && is_identity(cyclic(n), *r.witness_law).holds &&
             evaluate_word(g, *r.witness_law, gens) != 0;
      }
      c.check("varieties.oracle-consistency", cell(g, x), ok, to_string(r.verdict));
    }
  }
}

void monotone_checks(Ctx& c) {
  if (!c.want("varieties.monotone")) return;
  auto const vs = builtin_varieties();
  auto const& corpus = default_corpus();
  std::vector<std::vector<bool>> member(vs.size(), std::vector<bool>(corpus.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j) member[i][j] = is_member(corpus[j], vs[i]).member;
  }
  auto implied = [&](std::size_t x, std::size_t y) {
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (member[y][j] && !member[x][j]) return false;
    }
    return true;
  };
  auto index = [&](std::string const& n) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].name == n) return i;
    }
    throw InvalidArgument("no builtin variety " + n);
  };
  // the chain known from the laws themselves
  for (auto [lo, hi] : {std::pair{"abelian", "nilpotent-2"}, {"nilpotent-2", "nilpotent-3"},
                        {"abelian", "metabelian"}}) {
    c.check("varieties.monotone", std::string(lo) + "<=" + hi, implied(index(hi), index(lo)));
  }
}

void round_trip_checks(Ctx& c) {
  if (!c.want("words.round-trip")) return;
  std::mt19937 rng(2024);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    FreeWord w = random_word(rng, 4, 10);
    auto const text = print_word(w);
    ok = parse_word(text) == w && print_word(parse_word(text)) == text;
  }
  c.check("words.round-trip", "1000 random words", ok);
}

// ---------------------------------------------------------------------------
// properties

void property_checks(Ctx& c, std::shared_ptr<SubgroupLattice const> const& lat) {
  auto const& g = lat->group();
  bool const is_product = g.name().find('x') != std::string::npos;
  std::map<std::string, bool> xt_by_variety;

  for (auto const& x : builtin_varieties()) {
    GroupAnalysis a(lat, x);
    auto const where = cell(g, x);
    bool const hyp = x.contains_all_abelian();
    bool const member = a.member().member;
    bool const xt = is_xt(a).verdict;
    bool const csx = is_csx(a).verdict;
    xt_by_variety[x.name] = xt;

    if (c.want("properties.xt-dual")) {
      c.check("properties.xt-dual", where, xt == is_xt(a, Method::centralizer).verdict);
    }
    if (c.want("properties.csx-dual")) {
      if (xt) {
        c.check("properties.csx-dual", where, csx == is_csx(a, Method::condition).verdict);
      } else {
        c.skip("properties.csx-dual");
      }
    }
    if (c.want("properties.sentences")) {
      auto s = eval_universal_sentences(a, 3);
      bool ok = s.xt() == xt && (!xt || s.csx() == csx);
      c.check("properties.sentences", where, ok);
    }
    if (c.want("properties.maximality")) {
      if (!xt) {
        c.skip("properties.maximality");
      } else {
        auto const maxes = maximal_x_subgroups(a);
        std::set<std::vector<Elem>> max_sets;
        for (auto const& m : maxes) max_sets.insert(m.members());
        bool ok = true;
        for (Elem e = 1; e < g.order() && ok; ++e) {
          auto cx = x_centralizer(a, e);
          if (!cx.elements.empty()) ok = cx.closed && max_sets.count(cx.elements) == 1;
        }
        for (auto const& m : maxes) {
          for (auto e : m.members()) {
            if (e != 0 && ok) ok = x_centralizer(a, e).elements == m.members();
          }
        }
        c.check("properties.maximality", where, ok);
      }
    }
    if (c.want("properties.csx-finite")) {
      if (hyp) {
        c.check("properties.csx-finite", where, !csx || member);
      } else {
        c.skip("properties.csx-finite");
      }
    }
    if (c.want("properties.subgroup-closure")) {
      bool ok = true;
      for (std::size_t h = 0; h < lat->size() && ok; ++h) {
        if (xt) ok = is_xt(a, Method::direct, h).verdict;
        if (csx && ok) ok = is_csx(a, Method::direct, h).verdict;
      }
      c.check("properties.subgroup-closure", where, ok);
    }
    if (c.want("properties.maximal-intersections")) {
      if (hyp) {
        c.check("properties.maximal-intersections", where, xt == maximal_intersections_trivial(a).verdict);
      } else {
        c.skip("properties.maximal-intersections");
      }
    }
    if (c.want("properties.centerless-marginal")) {
      if (!hyp) {
        c.skip("properties.centerless-marginal");
      } else if (xt && !member) {
        bool const z = center(g).is_trivial();
        bool const m = marginal_subgroup(g, x.basis).is_trivial();
        c.check("properties.centerless-marginal", where, z && m,
                std::string(z ? "" : "center nontrivial ") + (m ? "" : "marginal nontrivial"));
      } else {
        c.check("properties.centerless-marginal", where, true);
      }
    }
    if (c.want("properties.decomposability") && is_product) {
      if (hyp) {
        c.check("properties.decomposability", where, !xt || member);
      } else {
        c.skip("properties.decomposability");
      }
    }
    if (c.want("properties.operator-idempotence") &&
        (x.name == "abelian" || x.name == "nilpotent-2" || x.name == "metabelian")) {
      auto const& p = a.membership();
      auto t = apply_operator(p, Op::T);
      auto cs = apply_operator(p, Op::CS);
      bool const t1 = operator_check(p, Op::T).verdict, t2 = operator_check(t, Op::T).verdict;
      bool const c1 = operator_check(p, Op::CS).verdict, c2 = operator_check(cs, Op::CS).verdict;
      c.check("properties.operator-idempotence", where, t1 == t2 && c1 == c2);
    }
    if (c.want("properties.nilpotent-csx-xt") && x.members_nilpotent) {
      c.check("properties.nilpotent-csx-xt", where, !csx || xt);
    }
    if (c.want("properties.weak-transitivity") && x.name == "metabelian") {
      if (csx) {
        c.check("properties.weak-transitivity", where, weak_transitivity(a).verdict);
      } else {
        c.skip("properties.weak-transitivity");
      }
    }
  }

  if (c.want("properties.domain-methods")) {
    auto d = zero_divisor_scan(g, Method::definition);
    auto n = zero_divisor_scan(g, Method::normal_centralizer);
    c.check("properties.domain-methods", g.name(),
            d.report.verdict == n.report.verdict && d.zero_divisors == n.zero_divisors);
  }
}

// Frobenius groups of the corpus: kernel order and complement order
void partition_checks(Ctx& c) {
  if (!c.want("properties.partition-count")) return;
  for (auto [name, kernel, complement] : {std::tuple{"S3", 3, 2}, {"D10", 5, 2}, {"A4", 4, 3}, {"F21", 7, 3}}) {
    auto g = load_group(name);
    std::vector<SubgroupSet> reps;
    for (std::size_t order : {std::size_t(kernel), std::size_t(complement)}) {
      for (auto const& e : all_subgroups(g)) {
        if (e.subgroup.size() == order) {
          reps.push_back(e.subgroup);
          break;
        }
      }
    }
    auto r = verify_partition_count(g, reps);
    // the kernel is normal; only the complement is malnormal
    bool const ok = r.partition_ok && r.count_identity_ok && is_malnormal(reps[1]).verdict;
    c.check("properties.partition-count", name, ok,
            std::to_string(r.lhs) + " vs " + std::to_string(r.rhs));
  }
}

// ---------------------------------------------------------------------------
// freeprod

void construction_checks(Ctx& c, FreeConstruction const& k) {
  auto const& name = k.name();
  if (c.want("freeprod.normal-form") || c.want("freeprod.length-subadditive")) {
    std::size_t len = 0;
    while (bounded_word_count(k, len) < 1000) ++len;
    auto words = bounded_words(k, len);
    words.resize(1000);
    if (c.want("freeprod.normal-form")) {
      bool ok = true;
      for (auto const& w : words) {
        ok = ok && pw_normal_form(k, w) == w && pw_multiply(k, w, pw_invert(k, w)).is_identity();
      }
      c.check("freeprod.normal-form", name, ok);
    }
    if (c.want("freeprod.length-subadditive")) {
      bool ok = true;
      for (std::size_t i = 0; i < words.size(); i += 7) {
        for (std::size_t j = 0; j < words.size(); j += 13) {
          ok = ok && pw_multiply(k, words[i], words[j]).length() <= words[i].length() + words[j].length();
        }
      }
      c.check("freeprod.length-subadditive", name, ok);
    }
  }
  if (c.want("freeprod.homomorphism")) {
    bool ok = true;
    for (Factor f : {Factor::A, Factor::B}) {
      auto const& g = k.factor(f);
      for (Elem x = 0; x < g.order(); ++x) {
        for (Elem y = 0; y < g.order(); ++y) {
          ok = ok && pw_multiply(k, pw_embed(k, f, x), pw_embed(k, f, y)) == pw_embed(k, f, g.mul(x, y));
        }
      }
    }
    c.check("freeprod.homomorphism", name, ok);
  }
  if (c.want("freeprod.amalgam-coherence") && k.kind() == FreeConstruction::Kind::amalgam) {
    bool ok = true;
    for (auto e : k.amalgamated_in_a().members()) {
      ok = ok && pw_embed(k, Factor::A, e) == pw_embed(k, Factor::B, k.to_b(e));
    }
    c.check("freeprod.amalgam-coherence", name, ok);
  }
  // the search grows as (|A| + |B|)^len; C3 * C3 is the size the bounds are set for
  if (c.want("freeprod.power-conjugacy") && name == "c3xc3") {
    auto r = power_conjugacy_search(k, 6, 6, 3, 12);
    c.check("freeprod.power-conjugacy", name, r.lengths_match && !r.instances.empty(),
            std::to_string(r.instances.size()) + " instances");
  }
  if (c.want("freeprod.d2p-csx-not-xt") && name.starts_with("d2p:")) {
    auto const x = VarietySpec::builtin("metabelian");
    bool const members = is_member(k.factor(Factor::A), x).member && is_member(k.factor(Factor::B), x).member;
    auto mal = bounded_malnormal_check(k, Factor::A, SubgroupSet::whole(k.factor(Factor::A)), 4);
    auto w = not_xt_witness(k, x, 2);
    c.check("freeprod.d2p-csx-not-xt", name, members && mal.ok && w.found && !w.value.is_identity());
  }
}

}  // namespace

std::vector<std::string> suite_properties() { return kProperties; }

SuiteResult run_suite(SuiteOptions const& opts) {
  auto const& corpus = default_corpus();
  std::vector<std::function<void(Ctx&)>> tasks;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    tasks.push_back([i, &corpus](Ctx& c) {
      auto lat = std::make_shared<SubgroupLattice const>(corpus[i]);
      group_checks(c, *lat);
      word_checks(c, corpus[i], 17 + i);
      property_checks(c, lat);
    });
  }
  tasks.push_back(monotone_checks);
  tasks.push_back(round_trip_checks);
  tasks.push_back(partition_checks);
  for (auto const* ref : {"d2p:3", "d2p:5", "c3xc3", "free:C5,C7"}) {
    tasks.push_back([ref](Ctx& c) { construction_checks(c, load_construction(ref)); });
  }

  std::vector<std::unique_ptr<Ctx>> results(tasks.size());
  for (auto& r : results) r = std::make_unique<Ctx>(opts);
  kernels::for_each_index(static_cast<std::int64_t>(tasks.size()), [&](std::int64_t t) {
    auto& c = *results[static_cast<std::size_t>(t)];
    try {
      tasks[static_cast<std::size_t>(t)](c);
    } catch (std::exception const& e) {
      c.check("suite.error", "task " + std::to_string(t), false, e.what());
    }
  });

  std::map<std::string, SuiteItem> merged;
  for (auto const& r : results) {
    for (auto& [prop, item] : r->items()) {
      auto& m = merged[prop];
      m.property = prop;
      m.passed += item.passed;
      m.failed += item.failed;
      m.skipped += item.skipped;
      m.failures.insert(m.failures.end(), item.failures.begin(), item.failures.end());
    }
  }
  SuiteResult out;
  for (auto& [prop, item] : merged) out.items.push_back(std::move(item));
  return out;
}

}  // namespace varitas
