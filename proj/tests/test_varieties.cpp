#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "oracles.hpp"
#include "varitas/config.hpp"
#include "varitas/error.hpp"
#include "varitas/io.hpp"
#include "varitas/variety.hpp"

using namespace varitas;

namespace {

VarietySpec var(char const* name) { return VarietySpec::builtin(name); }

// Var(C_n) is defined by [x1,x2] and x1^n
VarietySpec cyclic_variety(std::size_t n) {
  VarietySpec x;
  x.name = "var-C" + std::to_string(n);
  x.basis = {parse_word("[x1,x2]"), parse_word("x1^" + std::to_string(n))};
  return x;
}

}  // namespace

TEST_CASE("builtin varieties") {
  CHECK(builtin_varieties().size() == 5);
  CHECK(var("abelian").contains_all_abelian());
  CHECK(var("nilpotent-3").contains_all_abelian());
  CHECK(var("metabelian").contains_all_abelian());
  CHECK_FALSE(var("burnside-2").contains_all_abelian());
  CHECK(var("all").basis.empty());
  CHECK(var("all").contains_all_abelian());
  CHECK(var("nilpotent-2").members_nilpotent);
  CHECK_FALSE(var("metabelian").members_nilpotent);
  CHECK_THROWS_AS(var("nilpotent-0"), InvalidArgument);
  CHECK_THROWS_AS(var("solvable"), InvalidArgument);
  CHECK(load_variety("builtin:burnside-3").basis.front() == parse_word("x1^3"));
}

TEST_CASE("is_member examples") {
  CHECK(is_member(symmetric(3), var("metabelian")).member);

  auto s4 = symmetric(4);
  auto v = is_member(s4, var("metabelian"));
  REQUIRE_FALSE(v.member);
  REQUIRE(v.violated);
  CHECK(v.violated->first == 0);
  CHECK(evaluate_word(s4, var("metabelian").basis[0], v.violated->second) != 0);

  CHECK(is_member(dihedral(8), var("nilpotent-2")).member);
  CHECK_FALSE(is_member(dihedral(8), var("abelian")).member);
}

TEST_CASE("membership of a subgroup uses only its elements") {
  auto s4 = symmetric(4);
  auto a4 = generate(s4, {s4.element("(1 2 3)"), s4.element("(1 2)(3 4)")});
  REQUIRE(a4.size() == 12);
  CHECK(is_member(a4, var("metabelian")).member);
  CHECK_FALSE(is_member(a4, var("nilpotent-3")).member);
  auto v4 = generate(s4, {s4.element("(1 2)(3 4)"), s4.element("(1 3)(2 4)")});
  CHECK(is_member(v4, var("burnside-2")).member);
}

TEST_CASE("q_predicate examples") {
  auto s4 = symmetric(4);
  auto const x = var("metabelian");
  Elem const a = s4.element("(2 3)");
  CHECK(q_predicate(s4, a, s4.element("(1 2)"), x));
  CHECK(q_predicate(s4, a, s4.element("(2 3 4)"), x));
  CHECK_FALSE(q_predicate(s4, a, s4.element("(1 2 3 4)"), x));

  QTable q(s4, x);
  for (Elem e = 0; e < 24; ++e) {
    CHECK(q(e, 0) == is_member(generate(s4, {e}), x).member);
    for (Elem f = 0; f < 24; ++f) CHECK(q(e, f) == q(f, e));
  }
}

TEST_CASE("abelian membership is table symmetry") {
  for (auto const& g : default_corpus()) {
    bool symmetric_table = true;
    for (Elem a = 0; a < g.order(); ++a) {
      for (Elem b = 0; b < g.order(); ++b) symmetric_table = symmetric_table && g.mul(a, b) == g.mul(b, a);
    }
    CHECK_MESSAGE(is_member(g, var("abelian")).member == symmetric_table, g.name());
  }
}

TEST_CASE("membership is monotone along extensional implication of laws") {
  auto const vs = builtin_varieties();
  for (auto const& x : vs) {
    for (auto const& y : vs) {
      // "x's laws hold wherever y's do" on the corpus
      bool implied = true;
      for (auto const& g : default_corpus()) {
        if (is_member(g, y).member && !is_member(g, x).member) implied = false;
      }
      if (!implied) continue;
      for (auto const& g : default_corpus()) {
        if (is_member(g, y).member) CHECK(is_member(g, x).member);
      }
    }
  }
  // the known chain abelian <= nilpotent-2 <= nilpotent-3, abelian <= metabelian
  for (auto const& g : default_corpus()) {
    bool const ab = is_member(g, var("abelian")).member;
    bool const n2 = is_member(g, var("nilpotent-2")).member;
    bool const n3 = is_member(g, var("nilpotent-3")).member;
    bool const mb = is_member(g, var("metabelian")).member;
    CHECK((!ab || n2));
    CHECK((!n2 || n3));
    CHECK((!ab || mb));
  }
}

TEST_CASE("var_gen_oracle examples") {
  auto s3 = symmetric(3);
  auto c2 = cyclic(2);
  auto r1 = var_gen_oracle(s3, c2, std::array<Elem, 1>{1});
  CHECK(r1.verdict == OracleVerdict::member);

  auto c4 = cyclic(4);
  auto r2 = var_gen_oracle(s3, c4, std::array<Elem, 1>{1});
  REQUIRE(r2.verdict == OracleVerdict::non_member);
  REQUIRE(r2.witness_law);
  // the law holds in S3 and fails at the generator of C4
  CHECK(is_identity(s3, *r2.witness_law).holds);
  CHECK(evaluate_word(c4, *r2.witness_law, std::array<Elem, 1>{1}) != 0);

  auto v4 = direct_product(cyclic(2), cyclic(2));
  auto gens = generating_set(SubgroupSet::whole(v4));
  auto r3 = var_gen_oracle(c2, v4, gens);
  CHECK(r3.verdict == OracleVerdict::member);
  CHECK(r3.free_order == 4);
}

TEST_CASE("var_gen_oracle reports unknown past its caps") {
  ScopedLimits lim([] {
    Limits l = limits();
    l.oracle_cap = 10;
    return l;
  }());
  auto v4 = direct_product(cyclic(2), cyclic(2));
  auto gens = generating_set(SubgroupSet::whole(v4));
  CHECK(var_gen_oracle(symmetric(3), v4, gens).verdict == OracleVerdict::unknown);
}

TEST_CASE("var_gen_oracle agrees with configured bases on the grid") {
  int decisive = 0;
  for (std::size_t n : {2, 3, 4, 6}) {
    auto a = cyclic(n);
    auto const x = cyclic_variety(n);
    for (auto const& g : default_corpus()) {
      auto gens = generating_set(SubgroupSet::whole(g));
      auto r = var_gen_oracle(a, g, gens);
      if (r.verdict == OracleVerdict::unknown) continue;
      ++decisive;
      bool const member = is_member(g, x).member;
      CHECK_MESSAGE((r.verdict == OracleVerdict::member) == member, g.name() << " in Var(C" << n << ")");
      if (r.witness_law) {
        CHECK(is_identity(a, *r.witness_law).holds);
        CHECK(evaluate_word(g, *r.witness_law, gens) != 0);
      }
    }
  }
  CHECK(decisive > 40);
  // Var(C2) is also defined by x^2 alone
  for (auto const& g : default_corpus()) {
    auto gens = generating_set(SubgroupSet::whole(g));
    auto r = var_gen_oracle(cyclic(2), g, gens);
    if (r.verdict == OracleVerdict::unknown) continue;
    CHECK((r.verdict == OracleVerdict::member) == is_member(g, var("burnside-2")).member);
  }
}

TEST_CASE("var_gen_oracle on S3 agrees with necessary laws") {
  // x^6 and [[x1,x2],[x3,x4]] hold in S3, so any member satisfies them
  auto s3 = symmetric(3);
  VarietySpec necessary;
  necessary.name = "s3-laws";
  necessary.basis = {parse_word("x1^6"), parse_word("[[x1,x2],[x3,x4]]")};
  for (auto const& g : default_corpus()) {
    auto gens = generating_set(SubgroupSet::whole(g));
    auto r = var_gen_oracle(s3, g, gens);
    if (r.verdict == OracleVerdict::member) CHECK_MESSAGE(is_member(g, necessary).member, g.name());
    if (r.verdict == OracleVerdict::non_member) {
      CHECK(is_identity(s3, *r.witness_law).holds);
      CHECK(evaluate_word(g, *r.witness_law, gens) != 0);
    }
  }
  CHECK(var_gen_oracle(s3, s3, generating_set(SubgroupSet::whole(s3))).verdict ==
        OracleVerdict::member);
}
