#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "varitas/freeprod.hpp"
#include "varitas/io.hpp"
#include "varitas/kernels.hpp"
#include "varitas/properties.hpp"
#include "varitas/report.hpp"

using namespace varitas;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(std::string const& args) {
  std::string const cmd = std::string(VARITAS_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int const st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("emit_report examples") {
  CHECK(dump_json(json::array()) == "[]\n");

  auto g = load_group("S3");
  GroupAnalysis a(g, VarietySpec::builtin("abelian"));
  auto r = is_csx(a);
  auto j = report_to_json(r, g);
  std::vector<std::string> keys;
  for (auto const& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"check", "group", "method", "stats", "variety", "verdict", "witness"});
  CHECK(j["verdict"] == false);
  CHECK(j["witness"]["subgroups"]["M"] == json::array({"()", "(1 2 3)", "(1 3 2)"}));

  GroupAnalysis c6(load_group("C6"), VarietySpec::builtin("abelian"));
  auto ok = report_to_json(is_xt(c6), c6.group());
  CHECK_FALSE(ok.contains("witness"));
  CHECK(report_to_text(is_xt(c6), c6.group()) == "xt C6 abelian direct: true");
}

TEST_CASE("suite json groups results by property") {
  auto r = run_suite({{"words.round-trip", "group.associativity"}});
  auto j = suite_to_json(r);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["property"] == "group.associativity");
  CHECK(j[0]["passed"] == 23);
  CHECK(j[1]["property"] == "words.round-trip");
  CHECK(j[1]["failures"].empty());
  for (auto const& item : r.items) {
    bool known = false;
    for (auto const& p : suite_properties()) known = known || p == item.property;
    CHECK(known);
  }
}

TEST_CASE("suite results do not depend on the thread count") {
  int const saved = kernels::jobs();
  SuiteOptions opts{{"properties.xt", "properties.csx-dual", "freeprod.normal-form", "words.marginal"}};
  kernels::set_jobs(1);
  auto one = dump_json(suite_to_json(run_suite(opts)));
  kernels::set_jobs(4);
  auto four = dump_json(suite_to_json(run_suite(opts)));
  kernels::set_jobs(saved);
  CHECK(one == four);
}

TEST_CASE("CLI check verdicts match the API on the grid") {
  for (auto const& name : corpus_names()) {
    for (auto const& x : builtin_varieties()) {
      GroupAnalysis a(load_group(name), x);
      for (auto const& kind : {"xt", "csx"}) {
        auto run = cli(std::string("check ") + kind + " --group " + name + " --variety " + x.name + " --output json");
        REQUIRE(run.status == 0);
        auto doc = json::parse(run.out);
        REQUIRE(doc.size() == 1);
        auto const expected = std::string(kind) == "xt" ? is_xt(a) : is_csx(a);
        CHECK_MESSAGE(doc[0] == report_to_json(expected, a.group()), name << " " << x.name << " " << kind);
      }
    }
  }
}

TEST_CASE("CLI examples and exit codes") {
  auto csx = cli("check csx --group builtin:S3 --variety builtin:abelian");
  CHECK(csx.status == 0);
  CHECK(csx.out.find("csx S3 abelian direct: false") == 0);
  CHECK(csx.out.find("M={(), (1 2 3), (1 3 2)}") != std::string::npos);

  CHECK(cli("check csx --group S3 --variety abelian --expect true").status == 1);
  CHECK(cli("check csx --group S3 --variety abelian --expect false").status == 0);
  CHECK(cli("check xt --group nosuch").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("check csx --group S3 --output yaml").status == 2);
  CHECK(cli("check member --group S3 --cap-budget 0").status == 2);
  CHECK(cli("sentences --group S4 --variety abelian --nmax 2 --cap-budget 100").status == 2);
  CHECK(cli("check member --group S5 --cap-order 60").status == 2);
  CHECK(cli("suite --only words.round-trip").status == 0);

  auto dom = cli("check domain --group C6 --output json");
  REQUIRE(dom.status == 0);
  auto d = json::parse(dom.out);
  CHECK(d[0]["verdict"] == false);
  CHECK(d[0]["zero_divisors"].size() == 5);
  auto nc = cli("check domain --group A5 --method normal-centralizer --output json");
  CHECK(json::parse(nc.out)[0]["verdict"] == true);
}

TEST_CASE("CLI commands agree with the API") {
  auto g = load_group("S4");
  auto const x = VarietySpec::builtin("metabelian");
  GroupAnalysis a(g, x);

  auto cent = json::parse(cli("centralizer --group S4 --variety metabelian --x \"(2 3)\" --output json").out);
  auto c = x_centralizer(a, g.element("(2 3)"));
  CHECK(cent[0]["elements"].size() == c.elements.size());
  CHECK(cent[0]["closed"] == c.closed);

  auto maxes = json::parse(cli("subgroups --group S4 --maximal --variety metabelian --output json").out);
  CHECK(maxes.size() == maximal_x_subgroups(a).size());
  auto all = json::parse(cli("subgroups --group S4 --output json").out);
  CHECK(all.size() == 30);

  auto marg = json::parse(cli("marginal --group D8 --word \"[x1,x2]\" --output json").out);
  CHECK(marg[0]["members"].size() == 2);
  auto verb = json::parse(cli("verbal --group S4 --variety abelian --output json").out);
  CHECK(verb[0]["members"].size() == 12);

  auto sent = json::parse(cli("sentences --group S3 --variety abelian --nmax 3 --output json").out);
  REQUIRE(sent.size() == 5);
  auto s = eval_universal_sentences(GroupAnalysis(load_group("S3"), VarietySpec::builtin("abelian")), 3);
  CHECK(sent[0]["verdict"] == s.sub_x.verdict);
  CHECK(sent[1]["verdict"] == s.mal_x.verdict);

  auto f21 = load_group("F21");
  std::string c7, c3;
  for (auto const& e : all_subgroups(f21)) {
    auto gens = generating_set(e.subgroup);
    if (e.subgroup.size() == 7 && c7.empty()) c7 = f21.label(gens[0]);
    if (e.subgroup.size() == 3 && c3.empty()) c3 = f21.label(gens[0]);
  }
  auto part = cli("partition-count --group F21 --rep \"" + c7 + "\" --rep \"" + c3 + "\" --output json --expect true");
  CHECK(part.status == 0);
  auto p = json::parse(part.out);
  CHECK(p[0]["lhs"] == 20);
  CHECK(p[0]["terms"] == json::array({6, 14}));

  auto k = d2p_amalgam(3);
  auto mal = json::parse(cli("amalgam check-malnormal --construction d2p:3 --len 4 --output json").out);
  CHECK(mal[0]["verdict"] == true);
  CHECK(mal[0]["words_checked"] == bounded_word_count(k, 4));
  auto wit = cli("amalgam not-xt-witness --construction d2p:3 --variety metabelian --depth 2 --output json --expect true");
  CHECK(wit.status == 0);
  auto w = not_xt_witness(k, x, 2);
  CHECK(json::parse(wit.out)[0]["value"] == pword_to_json(k, w.value));

  auto probe = json::parse(
      cli("probe free --construction c3xc3 --w1 \"a2 b2\" --w2 \"b2 a2\" --len 8 --output json").out);
  CHECK(probe[0]["verdict"] == true);
  auto rel = json::parse(
      cli("probe free --construction c3xc3 --w1 \"a2 b2\" --w2 \"a2 b2^2\" --len 10 --output json").out);
  CHECK(rel[0]["relation"] == "x1 x2^-1 x1 x2^-1 x1 x2^-1");
}

TEST_CASE("CLI json is byte-identical across --jobs") {
  for (auto const* args : {"check csx --group A5 --variety metabelian --output json",
                           "check member --group S4 --variety nilpotent-3 --output json",
                           "sentences --group S4 --variety metabelian --output json",
                           "amalgam not-xt-witness --construction d2p:5 --output json --variety metabelian",
                           "suite --only properties.subgroup --output json"}) {
    auto one = cli(std::string(args) + " --jobs 1");
    auto three = cli(std::string(args) + " --jobs 3");
    CHECK(one.status == three.status);
    CHECK_MESSAGE(one.out == three.out, args);
    CHECK_FALSE(one.out.empty());
  }
}
