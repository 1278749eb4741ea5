#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <set>

#include "oracles.hpp"
#include "varitas/config.hpp"
#include "varitas/error.hpp"
#include "varitas/group.hpp"
#include "varitas/io.hpp"

using namespace varitas;

namespace {

oracle::Images images_of(std::string const& cycles, std::size_t degree) {
  auto const p = Permutation::parse(cycles, degree);
  return {p.images().begin(), p.images().end()};
}

Elem el(FiniteGroup const& g, std::string const& label) { return g.element(label); }

}  // namespace

TEST_CASE("permutation parsing and printing") {
  auto p = Permutation::parse("(1 2)(3 4)");
  CHECK(p.degree() == 4);
  CHECK(p.to_cycles() == "(1 2)(3 4)");
  CHECK(Permutation::parse("()").is_identity());
  CHECK(Permutation::parse("(3 1 2)").to_cycles() == "(1 2 3)");
  CHECK_THROWS_AS(Permutation::parse("(1 2"), ParseError);
  CHECK_THROWS_AS(Permutation::parse("(0 1)"), ParseError);
  CHECK_THROWS_AS(Permutation::parse("(1 2)(2 3)"), ParseError);
}

TEST_CASE("composition applies the right factor first") {
  // oracle: evaluate both maps point by point
  auto const p = images_of("(1 2)", 4);
  auto const q = images_of("(2 3 4)", 4);
  auto const expected = oracle::compose(p, q);
  auto const got = Permutation::parse("(1 2)", 4) * Permutation::parse("(2 3 4)", 4);
  CHECK(oracle::Images(got.images().begin(), got.images().end()) == expected);
  CHECK(got.to_cycles() == "(1 2 3 4)");
}

TEST_CASE("construct_group examples") {
  CHECK(symmetric(4).order() == 24);

  auto f = frobenius21();
  auto ref = oracle::closure({images_of("(1 2 3 4 5 6 7)", 7), images_of("(2 3 5)(4 7 6)", 7)}, 7);
  CHECK(f.order() == ref.size());
  CHECK(f.order() == 21);
  CHECK_FALSE(f.is_abelian());

  std::vector<Permutation> gens{Permutation::parse("(1 2)"), Permutation::parse("(1 2 3)")};
  auto g = FiniteGroup::from_permutations("G", gens);
  CHECK(g.order() == oracle::closure({images_of("(1 2)", 3), images_of("(1 2 3)", 3)}, 3).size());
  auto s3 = symmetric(3);
  REQUIRE(g.order() == s3.order());
  bool same = true;
  for (Elem a = 0; a < 6; ++a) {
    CHECK(g.label(a) == s3.label(a));
    for (Elem b = 0; b < 6; ++b) same = same && g.mul(a, b) == s3.mul(a, b);
  }
  CHECK(same);
}

TEST_CASE("permutation groups are indexed so that the table matches composition") {
  auto g = symmetric(4);
  auto const& perms = *g.permutations();
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      oracle::Images pa(perms[a].images().begin(), perms[a].images().end());
      oracle::Images pb(perms[b].images().begin(), perms[b].images().end());
      auto const& pab = perms[g.mul(a, b)].images();
      REQUIRE(oracle::Images(pab.begin(), pab.end()) == oracle::compose(pa, pb));
    }
  }
  CHECK(perms[0].is_identity());
}

TEST_CASE("group_arith examples") {
  auto s4 = symmetric(4);
  Elem args[] = {el(s4, "(1 2)"), el(s4, "(2 3 4)")};
  CHECK(s4.label(group_arith(s4, ArithKind::product, args)) == "(1 2 3 4)");
  Elem inv_arg[] = {el(s4, "(1 2 3)")};
  CHECK(s4.label(group_arith(s4, ArithKind::inverse, inv_arg)) == "(1 3 2)");

  // oracle: x^-1 a x on points
  auto const a = images_of("(1 2)", 4);
  auto const x = images_of("(1 3)", 4);
  auto const expected = oracle::compose(oracle::invert(x), oracle::compose(a, x));
  Elem conj_args[] = {el(s4, "(1 2)"), el(s4, "(1 3)")};
  Elem const c = group_arith(s4, ArithKind::conjugate, conj_args);
  auto const& got = (*s4.permutations())[c].images();
  CHECK(oracle::Images(got.begin(), got.end()) == expected);
  CHECK(s4.label(c) == "(2 3)");

  Elem comm_args[] = {el(s4, "(1 2)"), el(s4, "(1 3)")};
  Elem const k = group_arith(s4, ArithKind::commutator, comm_args);
  Elem const xx = el(s4, "(1 2)"), yy = el(s4, "(1 3)");
  CHECK(k == s4.mul(s4.mul(s4.inv(xx), s4.inv(yy)), s4.mul(xx, yy)));

  Elem bad[] = {0, 24};
  CHECK_THROWS_AS(group_arith(s4, ArithKind::product, bad), InvalidArgument);
  CHECK_THROWS_AS(group_arith(s4, ArithKind::inverse, bad), InvalidArgument);
}

TEST_CASE("generate examples") {
  auto s4 = symmetric(4);
  CHECK(generate(s4, {el(s4, "(1 2)"), el(s4, "(1 2 3 4)")}).size() == 24);
  CHECK(generate(s4, std::span<Elem const>{}).is_trivial());
  auto s3 = symmetric(3);
  auto h = generate(s3, {el(s3, "(1 2 3)")});
  CHECK(h.size() == 3);
  CHECK(h.members() == oracle::naive_span(s3, {el(s3, "(1 2 3)")}));
}

TEST_CASE("all_subgroups examples") {
  auto s3 = symmetric(3);
  auto subs = all_subgroups(s3);
  CHECK(subs.size() == 6);
  int normal = 0;
  for (auto const& e : subs) {
    if (e.normal) {
      ++normal;
      CHECK((e.subgroup.size() == 1 || e.subgroup.size() == 3 || e.subgroup.size() == 6));
    }
  }
  CHECK(normal == 3);

  CHECK(all_subgroups(symmetric(4)).size() == oracle::two_generated(symmetric(4)).size());
  CHECK(all_subgroups(symmetric(4)).size() == 30);

  auto c6 = all_subgroups(cyclic(6));
  CHECK(c6.size() == 4);
  for (auto const& e : c6) CHECK(e.normal);
}

TEST_CASE("all_subgroups agrees with the two-generated oracle on the corpus") {
  // every subgroup of every corpus group is generated by two elements
  for (auto const& g : default_corpus()) {
    auto subs = all_subgroups(g);
    std::set<std::vector<Elem>> got;
    for (auto const& e : subs) {
      got.insert(e.subgroup.members());
      bool normal = true;
      for (Elem x = 0; x < g.order() && normal; ++x) {
        for (auto h : e.subgroup.members()) {
          if (!e.subgroup.contains(g.conj(h, x))) {
            normal = false;
            break;
          }
        }
      }
      CHECK(e.normal == normal);
    }
    CHECK_MESSAGE(got == oracle::two_generated(g), g.name());
    CHECK(got.size() == subs.size());
  }
}

TEST_CASE("all_subgroups respects the lattice cap") {
  ScopedLimits lim([] {
    Limits l = limits();
    l.lattice_cap = 10;
    return l;
  }());
  CHECK_THROWS_AS(all_subgroups(symmetric(4)), BudgetExceeded);
}

TEST_CASE("is_malnormal examples") {
  auto s3 = symmetric(3);
  CHECK(is_malnormal(generate(s3, {el(s3, "(1 2)")})).verdict);

  auto a3 = generate(s3, {el(s3, "(1 2 3)")});
  auto r = is_malnormal(a3);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.witness);
  auto [g, h] = *r.witness;
  CHECK_FALSE(a3.contains(g));
  CHECK(h != 0);
  CHECK(a3.contains(h));
  CHECK(a3.conjugate(g).contains(h));
  CHECK(s3.label(h) == "(1 2 3)");

  auto whole = SubgroupSet::whole(s3);
  CHECK(is_malnormal(whole).verdict);
  CHECK(is_malnormal(SubgroupSet::trivial(s3)).verdict);
}

TEST_CASE("classic_centralizer examples") {
  auto s3 = symmetric(3);
  auto c = classic_centralizer(s3, el(s3, "(1 2 3)"));
  CHECK(c.members() == oracle::naive_span(s3, {el(s3, "(1 2 3)")}));
  for (auto const& g : default_corpus()) CHECK(classic_centralizer(g, 0).is_whole());

  auto s4 = symmetric(4);
  auto c4 = classic_centralizer(s4, el(s4, "(1 2)(3 4)"));
  std::size_t expected = 0;
  for (Elem x = 0; x < 24; ++x) expected += oracle::commute(s4, x, el(s4, "(1 2)(3 4)"));
  CHECK(c4.size() == expected);
  CHECK(c4.size() == 8);
  CHECK_FALSE(induced_group(c4).is_abelian());

  auto z = center(quaternion8());
  CHECK(z.size() == 2);
}

TEST_CASE("direct_product examples") {
  auto v = direct_product(cyclic(2), cyclic(2));
  CHECK(v.order() == 4);
  for (Elem a = 0; a < 4; ++a) CHECK(v.mul(a, a) == 0);

  auto s3c2 = direct_product(symmetric(3), cyclic(2));
  CHECK(s3c2.order() == 12);
  CHECK_FALSE(s3c2.is_abelian());

  auto c15 = direct_product(cyclic(3), cyclic(5));
  CHECK(c15.order() == 15);
  std::size_t max_order = 0;
  for (Elem a = 0; a < 15; ++a) max_order = std::max(max_order, c15.element_order(a));
  CHECK(max_order == 15);
}

TEST_CASE("table validation rejects non-groups") {
  // a Latin square with identity 0 that is not associative
  std::vector<std::vector<Elem>> bad = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", bad), InvalidArgument);
  std::vector<std::vector<Elem>> not_latin = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", not_latin), InvalidArgument);
  std::vector<std::vector<Elem>> z2 = {{0, 1}, {1, 0}};
  CHECK(FiniteGroup::from_table("Z2", z2).order() == 2);
}

TEST_CASE("permutation closure respects the order cap") {
  std::vector<Permutation> gens{Permutation::parse("(1 2)"), Permutation::parse("(1 2 3 4 5)")};
  CHECK_THROWS_AS(FiniteGroup::from_permutations("S5", gens, 100), BudgetExceeded);
  CHECK(FiniteGroup::from_permutations("S5", gens, 120).order() == 120);
}

TEST_CASE("orbit-stabilizer on every corpus group") {
  for (auto const& g : default_corpus()) {
    for (Elem a = 0; a < g.order(); ++a) {
      std::set<Elem> cls;
      for (Elem x = 0; x < g.order(); ++x) cls.insert(group_arith(g, ArithKind::conjugate, std::array<Elem, 2>{a, x}));
      REQUIRE(cls.size() * classic_centralizer(g, a).size() == g.order());
    }
  }
}

TEST_CASE("generate is idempotent on every subgroup") {
  for (auto const& g : default_corpus()) {
    for (auto const& e : all_subgroups(g)) {
      CHECK(generate(g, e.subgroup.members()) == e.subgroup);
    }
  }
}

TEST_CASE("malnormality agrees with an independent intersection scan") {
  for (auto const& g : default_corpus()) {
    for (auto const& e : all_subgroups(g)) {
      auto const& h = e.subgroup;
      // H malnormal iff each conjugate by g outside H meets H trivially
      bool expected = true;
      for (Elem x = 0; x < g.order() && expected; ++x) {
        if (h.contains(x)) continue;
        auto hx = h.conjugate(x);
        std::size_t common = 0;
        for (auto y : h.members()) common += hx.contains(y);
        expected = common == 1;
      }
      auto r = is_malnormal(h);
      CHECK(r.verdict == expected);
      CHECK(r.witness.has_value() == !r.verdict);
      // the second characterisation: every intersection is H or 1, and H^x = H only for x in H
      bool alt = true;
      for (Elem x = 0; x < g.order(); ++x) {
        auto meet = h.intersect(h.conjugate(x));
        if (!(meet.is_trivial() || meet == h)) alt = false;
        if (meet == h && !h.is_trivial() && !h.contains(x)) alt = false;
      }
      CHECK(r.verdict == alt);
    }
  }
}

TEST_CASE("malnormality is transitive") {
  for (auto const& g : default_corpus()) {
    auto subs = all_subgroups(g);
    for (auto const& h : subs) {
      if (!is_malnormal(h.subgroup).verdict) continue;
      for (auto const& k : subs) {
        if (!k.subgroup.is_subset_of(h.subgroup)) continue;
        if (is_malnormal_in(k.subgroup, h.subgroup).verdict) {
          CHECK(is_malnormal(k.subgroup).verdict);
        }
      }
    }
  }
}

TEST_CASE("builtin names and corpus") {
  CHECK(default_corpus().size() == 23);
  CHECK(builtin_by_name("cyclic:6").order() == 6);
  CHECK(builtin_by_name("S3xC2").order() == 12);
  CHECK(builtin_by_name("E8").order() == 8);
  CHECK(builtin_by_name("quaternion8").name() == "Q8");
  CHECK(load_group("builtin:A5").order() == 60);
  CHECK_THROWS_AS(builtin_by_name("dihedral:7"), InvalidArgument);
  CHECK_THROWS_AS(load_group("no-such-group"), InvalidArgument);
}
