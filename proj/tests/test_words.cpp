#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <random>
#include <set>

#include "oracles.hpp"
#include "varitas/config.hpp"
#include "varitas/error.hpp"
#include "varitas/io.hpp"
#include "varitas/variety.hpp"
#include "varitas/word.hpp"

using namespace varitas;

namespace {

FreeWord random_word(std::mt19937& rng, std::uint32_t vars, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> var(1, vars);
  std::uniform_int_distribution<int> e(-3, 3);
  std::vector<Syllable> s;
  for (int i = len(rng); i > 0; --i) {
    int x = e(rng);
    if (x == 0) x = 1;
    s.push_back({var(rng), x});
  }
  return FreeWord(s);
}

// evaluates letter by letter without the library's evaluator
Elem naive_eval_raw(FiniteGroup const& g, std::vector<Syllable> const& syl,
                    std::vector<Elem> const& vals) {
  Elem acc = 0;
  for (auto const& s : syl) {
    Elem v = vals[s.var - 1];
    if (s.exp < 0) {
      for (Elem y = 0; y < g.order(); ++y) {
        if (g.mul(v, y) == 0) {
          v = y;
          break;
        }
      }
    }
    for (std::int64_t k = 0; k < (s.exp < 0 ? -s.exp : s.exp); ++k) acc = g.mul(acc, v);
  }
  return acc;
}

Elem naive_eval(FiniteGroup const& g, FreeWord const& w, std::vector<Elem> const& vals) {
  return naive_eval_raw(g, w.syllables(), vals);
}

std::vector<FreeWord> basis_words() {
  std::vector<FreeWord> out;
  for (auto const& x : builtin_varieties()) out.push_back(x.basis.front());
  return out;
}

}  // namespace

TEST_CASE("parse_word examples") {
  auto c = parse_word("[x1,x2]");
  std::vector<Syllable> expected{{1, -1}, {2, -1}, {1, 1}, {2, 1}};
  CHECK(c.syllables() == expected);
  CHECK(c.arity() == 2);

  auto sq = parse_word("x1^2");
  CHECK(sq.syllables() == std::vector<Syllable>{{1, 2}});

  auto left = parse_word("[x1,x2,x2]");
  CHECK(left == parse_word("[[x1,x2],x2]"));
  CHECK(left.arity() == 2);

  CHECK(parse_word(" x1  x1^-1 ").empty());
  CHECK(parse_word("(x1 x2)^-2") == parse_word("x2^-1 x1^-1 x2^-1 x1^-1"));
  CHECK(parse_word("1").empty());
}

TEST_CASE("parse_word errors carry positions") {
  CHECK_THROWS_AS(parse_word("x0"), ParseError);
  CHECK_THROWS_AS(parse_word("x1^0"), ParseError);
  CHECK_THROWS_AS(parse_word("[x1]"), ParseError);
  CHECK_THROWS_AS(parse_word("x1 ^"), ParseError);
  CHECK_THROWS_AS(parse_word(""), ParseError);
  CHECK_THROWS_AS(parse_word("y1"), ParseError);
  try {
    parse_word("x1 x2 ]");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.position() == 6);
  }
  try {
    parse_word("x1^0");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("print and parse round trip") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    FreeWord w = random_word(rng, 5, 12);
    CHECK(parse_word(print_word(w)) == w);
  }
  CHECK(print_word(parse_word("x1^2 x2^-1 x1")) == "x1^2 x2^-1 x1");
  CHECK(print_word(FreeWord{}) == "1");
}

TEST_CASE("free reduction keeps syllables alternating") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    FreeWord w = random_word(rng, 3, 20);
    auto const& s = w.syllables();
    for (std::size_t k = 0; k + 1 < s.size(); ++k) CHECK(s[k].var != s[k + 1].var);
    for (auto const& y : s) CHECK(y.exp != 0);
    CHECK((w * w.inverse()).empty());
  }
}

TEST_CASE("evaluate_word examples") {
  auto s3 = symmetric(3);
  Elem const a = s3.element("(1 2)"), b = s3.element("(1 3)");
  Elem const v = evaluate_word(s3, parse_word("[x1,x2]"), std::array<Elem, 2>{a, b});
  // oracle: a^-1 b^-1 a b on points
  auto const& perms = *s3.permutations();
  oracle::Images pa(perms[a].images().begin(), perms[a].images().end());
  oracle::Images pb(perms[b].images().begin(), perms[b].images().end());
  auto expected = oracle::compose(oracle::compose(oracle::invert(pa), oracle::invert(pb)),
                                  oracle::compose(pa, pb));
  CHECK(oracle::Images(perms[v].images().begin(), perms[v].images().end()) == expected);
  CHECK(s3.element_order(v) == 3);

  for (auto const& w : basis_words()) {
    std::vector<Elem> ones(w.arity(), 0);
    CHECK(evaluate_word(s3, w, ones) == 0);
  }
  CHECK(s3.label(evaluate_word(s3, parse_word("x1^2"), std::array<Elem, 1>{s3.element("(1 2 3)")})) ==
        "(1 3 2)");
  CHECK_THROWS_AS(evaluate_word(s3, parse_word("[x1,x2]"), std::array<Elem, 1>{a}), InvalidArgument);
}

TEST_CASE("is_identity examples") {
  auto comm = parse_word("[x1,x2]");
  CHECK(is_identity(cyclic(6), comm).holds);

  auto s3 = symmetric(3);
  auto v = is_identity(s3, comm);
  REQUIRE_FALSE(v.holds);
  // oracle: the first failing pair in nested-loop order
  std::vector<Elem> first;
  for (Elem x = 0; x < 6 && first.empty(); ++x) {
    for (Elem y = 0; y < 6 && first.empty(); ++y) {
      if (naive_eval(s3, comm, {x, y}) != 0) first = {x, y};
    }
  }
  CHECK(*v.counterexample == first);
  CHECK(evaluate_word(s3, comm, *v.counterexample) != 0);

  CHECK(is_identity(s3, parse_word("[[x1,x2],[x3,x4]]")).holds);
}

TEST_CASE("identity scans agree between the serial and parallel kernels") {
  kernels::set_jobs(4);
  for (auto const& g : default_corpus()) {
    for (auto const& w : basis_words()) {
      if (tuple_count(g.order(), w.arity()) > 2'000'000) continue;
      auto s = is_identity(g, w, {}, kernels::Mode::serial);
      auto p = is_identity(g, w, {}, kernels::Mode::parallel);
      CHECK(s.holds == p.holds);
      CHECK(s.counterexample == p.counterexample);
    }
  }
  kernels::set_jobs(1);
}

TEST_CASE("identity scans respect the budget") {
  ScopedLimits lim([] {
    Limits l = limits();
    l.budget = 1000;
    return l;
  }());
  try {
    is_identity(symmetric(4), parse_word("[[x1,x2],[x3,x4]]"));
    FAIL("expected a budget error");
  } catch (BudgetExceeded const& e) {
    CHECK(e.required() == 24.0 * 24 * 24 * 24);
    CHECK(e.limit() == 1000.0);
  }
}

TEST_CASE("standard_words") {
  CHECK(standard_word(StandardKind::nilpotent, 1) == parse_word("[x1,x2]"));
  CHECK(standard_word(StandardKind::nilpotent, 2) == parse_word("[x1,x2,x3]"));
  CHECK(standard_word(StandardKind::burnside, 2) == parse_word("x1^2"));
  CHECK(standard_word(StandardKind::metabelian) == parse_word("[[x1,x2],[x3,x4]]"));
  CHECK(standard_word(StandardKind::abelian) == parse_word("[x1,x2]"));
  CHECK_THROWS_AS(standard_word(StandardKind::nilpotent, 0), InvalidArgument);
  CHECK_THROWS_AS(standard_word(StandardKind::burnside, 0), InvalidArgument);
}

TEST_CASE("verbal_subgroup examples") {
  auto s4 = symmetric(4);
  std::vector<FreeWord> comm{parse_word("[x1,x2]")};
  auto d = verbal_subgroup(s4, comm);
  CHECK(d.size() == 12);
  // oracle: the even permutations, by counting inversions
  for (Elem x = 0; x < 24; ++x) {
    auto const& im = (*s4.permutations())[x].images();
    int inversions = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) inversions += im[i] > im[j];
    }
    CHECK(d.contains(x) == (inversions % 2 == 0));
  }
  CHECK(verbal_subgroup(cyclic(6), comm).is_trivial());

  auto q8 = quaternion8();
  std::vector<FreeWord> sq{parse_word("x1^2")};
  auto v = verbal_subgroup(q8, sq);
  std::set<Elem> squares;
  for (Elem x = 0; x < 8; ++x) squares.insert(q8.mul(x, x));
  CHECK(std::set<Elem>(v.members().begin(), v.members().end()) == squares);
  CHECK(v.size() == 2);
  CHECK(v.contains(q8.element("-1")));
}

TEST_CASE("marginal_subgroup examples") {
  std::vector<FreeWord> comm{parse_word("[x1,x2]")};
  auto q8 = quaternion8();
  auto m = marginal_subgroup(q8, comm);
  CHECK(m.members() == std::vector<Elem>{q8.element("1"), q8.element("-1")});
  CHECK(marginal_subgroup(symmetric(3), comm).is_trivial());
  CHECK(marginal_subgroup(cyclic(6), comm).is_whole());
}

TEST_CASE("marginal, verbal and identity agree on the corpus") {
  auto const words = basis_words();
  for (auto const& g : default_corpus()) {
    // [x1,x2]* is the center; oracle: elements commuting with everything
    std::vector<Elem> z;
    for (Elem x = 0; x < g.order(); ++x) {
      bool central = true;
      for (Elem y = 0; y < g.order(); ++y) central = central && oracle::commute(g, x, y);
      if (central) z.push_back(x);
    }
    std::vector<FreeWord> comm{parse_word("[x1,x2]")};
    CHECK_MESSAGE(marginal_subgroup(g, comm).members() == z, g.name());

    for (auto const& w : words) {
      std::vector<FreeWord> ws{w};
      bool const holds = is_identity(g, w).holds;
      auto marg = marginal_subgroup(g, ws);
      auto verb = verbal_subgroup(g, ws);
      CHECK_MESSAGE(marg.is_whole() == holds, g.name() << " " << print_word(w));
      CHECK_MESSAGE(verb.is_trivial() == holds, g.name() << " " << print_word(w));
      CHECK(marg.is_normal());
      CHECK(verb.is_normal());
    }
  }
}

TEST_CASE("evaluation ignores inserted cancelling pairs") {
  std::mt19937 rng(3);
  auto g = symmetric(4);
  std::uniform_int_distribution<Elem> pick(0, 23);
  for (int i = 0; i < 200; ++i) {
    FreeWord w = random_word(rng, 3, 8);
    // splice x_k^e x_k^-e at a random syllable boundary, built without reduction
    std::vector<Syllable> raw = w.syllables();
    std::uniform_int_distribution<std::size_t> at(0, raw.size());
    std::uint32_t const k = 1 + static_cast<std::uint32_t>(i % 3);
    std::size_t const p = at(rng);
    raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(p), {{k, 2}, {k, -2}});
    std::vector<Elem> vals{pick(rng), pick(rng), pick(rng)};
    CHECK(FreeWord(raw) == w);
    CHECK(evaluate_word(g, w, vals) == naive_eval_raw(g, raw, vals));
  }
}
