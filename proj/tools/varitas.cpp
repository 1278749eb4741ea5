// Command-line front end.  Every command loads its inputs, calls one library
// operation and prints the result; the checks themselves live in the library.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "varitas/config.hpp"
#include "varitas/error.hpp"
#include "varitas/freeprod.hpp"
#include "varitas/io.hpp"
#include "varitas/kernels.hpp"
#include "varitas/properties.hpp"
#include "varitas/report.hpp"
#include "varitas/word.hpp"

using namespace varitas;
using nlohmann::json;

namespace {

struct Options {
  std::string output = "text";
  int jobs = 1;
  std::optional<std::size_t> cap_order;
  std::optional<std::uint64_t> cap_budget;

  std::string kind;  // check kind, amalgam action, probe kind
  std::string group;
  std::string variety = "abelian";
  std::string method;
  std::string construction;
  std::string element;
  std::string factor = "A";
  std::string subgroup;
  std::vector<std::string> words;
  std::vector<std::string> reps;
  std::vector<std::string> only;
  std::string w1, w2;
  std::optional<std::string> expect;
  bool maximal = false;
  int nmax = 3;
  std::size_t len = 4;
  std::size_t depth = 2;
};

// Output accumulated by a command: json entries and matching text lines.
struct Emitter {
  json doc = json::array();
  std::vector<std::string> lines;

  void add(json entry, std::string line) {
    doc.push_back(std::move(entry));
    lines.push_back(std::move(line));
  }
  void report(PropertyReport const& r, FiniteGroup const& g) { add(report_to_json(r, g), report_to_text(r, g)); }
  void print(std::string const& format) const {
    if (format == "json") {
      std::cout << dump_json(doc);
      return;
    }
    for (auto const& l : lines) std::cout << l << '\n';
  }
};

std::string join_labels(FiniteGroup const& g, std::vector<Elem> const& elems) {
  std::string s = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? ", " : "") + g.label(elems[i]);
  return s + "}";
}

json label_list(FiniteGroup const& g, std::vector<Elem> const& elems) {
  auto out = json::array();
  for (auto e : elems) out.push_back(g.label(e));
  return out;
}

// "(1 2),(3 4)" -> element indices
std::vector<Elem> parse_elements(FiniteGroup const& g, std::string const& text) {
  std::vector<Elem> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto const b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    out.push_back(g.element(item.substr(b, item.find_last_not_of(' ') - b + 1)));
  }
  return out;
}

std::vector<FreeWord> word_list(Options const& o) {
  std::vector<FreeWord> ws;
  for (auto const& w : o.words) ws.push_back(parse_word(w));
  if (ws.empty()) ws = load_variety(o.variety).basis;
  return ws;
}

// exit status for a single asserted verdict
int verdict_status(Options const& o, bool verdict) {
  if (!o.expect) return 0;
  return (*o.expect == "true") == verdict ? 0 : 1;
}

int cmd_check(Options const& o, Emitter& out) {
  auto g = load_group(o.group);
  if (o.kind == "domain") {
    Method m = o.method.empty() ? Method::definition : parse_method(o.method);
    auto z = zero_divisor_scan(g, m);
    auto j = report_to_json(z.report, g);
    j["zero_divisors"] = label_list(g, z.zero_divisors);
    out.add(std::move(j), report_to_text(z.report, g) + "  zero divisors=" + join_labels(g, z.zero_divisors));
    return verdict_status(o, z.report.verdict);
  }
  GroupAnalysis a(g, load_variety(o.variety));
  PropertyReport r;
  if (o.kind == "member") {
    r = membership_report(a);
  } else if (o.kind == "xt") {
    r = is_xt(a, o.method.empty() ? Method::direct : parse_method(o.method));
  } else {
    r = is_csx(a, o.method.empty() ? Method::direct : parse_method(o.method));
  }
  out.report(r, g);
  return verdict_status(o, r.verdict);
}

int cmd_centralizer(Options const& o, Emitter& out) {
  auto g = load_group(o.group);
  GroupAnalysis a(g, load_variety(o.variety));
  Elem const x = g.element(o.element);
  auto c = x_centralizer(a, x);
  json j = {{"check", "centralizer"},
            {"group", g.name()},
            {"variety", a.variety().name},
            {"element", g.label(x)},
            {"elements", label_list(g, c.elements)},
            {"closed", c.closed},
            {"generated_in_x", c.generated_in_x}};
  std::string line = "centralizer " + g.name() + " " + a.variety().name + " " + g.label(x) + ": " +
                     join_labels(g, c.elements) + (c.closed ? " closed" : " not closed");
  if (c.product_escape) {
    j["product_escape"] = {g.label(c.product_escape->first), g.label(c.product_escape->second)};
    line += "  x=" + g.label(c.product_escape->first) + " y=" + g.label(c.product_escape->second);
  }
  out.add(std::move(j), std::move(line));
  return 0;
}

int cmd_subgroups(Options const& o, Emitter& out) {
  auto g = load_group(o.group);
  if (o.maximal) {
    GroupAnalysis a(g, load_variety(o.variety));
    for (auto const& m : maximal_x_subgroups(a)) {
      out.add({{"check", "maximal-x-subgroup"},
               {"group", g.name()},
               {"variety", a.variety().name},
               {"members", label_list(g, m.members())},
               {"malnormal", is_malnormal(m).verdict}},
              "maximal " + a.variety().name + "-subgroup of order " + std::to_string(m.size()) + ": " +
                  join_labels(g, m.members()));
    }
    return 0;
  }
  for (auto const& e : all_subgroups(g)) {
    out.add({{"check", "subgroup"},
             {"group", g.name()},
             {"members", label_list(g, e.subgroup.members())},
             {"normal", e.normal}},
            std::string(e.normal ? "normal " : "       ") + "order " + std::to_string(e.subgroup.size()) +
                ": " + join_labels(g, e.subgroup.members()));
  }
  return 0;
}

int cmd_word_subgroup(Options const& o, Emitter& out, bool marginal) {
  auto g = load_group(o.group);
  auto ws = word_list(o);
  auto h = marginal ? marginal_subgroup(g, ws) : verbal_subgroup(g, ws);
  auto words = json::array();
  std::string text;
  for (auto const& w : ws) {
    words.push_back(print_word(w));
    text += (text.empty() ? "" : ", ") + print_word(w);
  }
  std::string const name = marginal ? "marginal" : "verbal";
  out.add({{"check", name}, {"group", g.name()}, {"words", words}, {"members", label_list(g, h.members())}},
          name + " " + g.name() + " [" + text + "]: " + join_labels(g, h.members()));
  return 0;
}

int cmd_sentences(Options const& o, Emitter& out) {
  auto g = load_group(o.group);
  GroupAnalysis a(g, load_variety(o.variety));
  auto s = eval_universal_sentences(a, o.nmax);
  out.report(s.sub_x, g);
  out.report(s.mal_x, g);
  for (auto const& r : s.xn) out.report(r, g);
  return 0;
}

int cmd_partition(Options const& o, Emitter& out) {
  auto g = load_group(o.group);
  std::vector<SubgroupSet> reps;
  for (auto const& r : o.reps) reps.push_back(generate(g, parse_elements(g, r)));
  auto p = verify_partition_count(g, reps);
  auto sets = json::array();
  for (auto const& r : reps) sets.push_back(label_list(g, r.members()));
  out.add({{"check", "partition-count"},
           {"group", g.name()},
           {"reps", sets},
           {"partition_ok", p.partition_ok},
           {"malnormal_ok", p.malnormal_ok},
           {"count_identity_ok", p.count_identity_ok},
           {"lhs", p.lhs},
           {"rhs", p.rhs},
           {"terms", p.terms}},
          "partition-count " + g.name() + ": |G|-1=" + std::to_string(p.lhs) + " sum=" + std::to_string(p.rhs) +
              " partition=" + (p.partition_ok ? "true" : "false") +
              " malnormal=" + (p.malnormal_ok ? "true" : "false"));
  return verdict_status(o, p.partition_ok && p.count_identity_ok);
}

int cmd_amalgam(Options const& o, Emitter& out) {
  auto k = load_construction(o.construction);
  if (o.kind == "check-malnormal") {
    Factor const f = o.factor == "B" ? Factor::B : Factor::A;
    auto const& fg = k.factor(f);
    auto h = o.subgroup.empty() ? SubgroupSet::whole(fg) : generate(fg, parse_elements(fg, o.subgroup));
    auto r = bounded_malnormal_check(k, f, h, o.len);
    json j = {{"check", "bounded-malnormal"},
              {"construction", k.name()},
              {"factor", o.factor},
              {"subgroup", label_list(fg, h.members())},
              {"verdict", r.ok},
              {"max_len", r.max_len},
              {"words_checked", r.words_checked}};
    std::string line = "bounded-malnormal " + k.name() + " factor " + o.factor + " L=" + std::to_string(r.max_len) +
                       ": " + (r.ok ? "true" : "false") + "  words=" + std::to_string(r.words_checked);
    if (r.witness) {
      j["witness"] = {{"g", pword_to_json(k, r.witness->first)}, {"h", fg.label(r.witness->second)}};
      line += "  g=" + print_pword(k, r.witness->first) + " h=" + fg.label(r.witness->second);
    }
    out.add(std::move(j), std::move(line));
    return verdict_status(o, r.ok);
  }
  auto const x = load_variety(o.variety);
  auto w = not_xt_witness(k, x, o.depth);
  json j = {{"check", "not-xt-witness"},
            {"construction", k.name()},
            {"variety", x.name},
            {"depth", o.depth},
            {"found", w.found},
            {"a_member", w.a_member},
            {"b_member", w.b_member},
            {"tuples_checked", w.tuples_checked}};
  std::string line = "not-xt-witness " + k.name() + " " + x.name + " depth=" + std::to_string(o.depth) + ": " +
                     (w.found ? "found" : "none");
  if (w.found) {
    auto tuple = json::array();
    std::string tt;
    for (auto const& u : w.tuple) {
      tuple.push_back(pword_to_json(k, u));
      tt += (tt.empty() ? "" : ", ") + print_pword(k, u);
    }
    j["intersection"] = pword_to_json(k, w.intersection);
    j["tuple"] = tuple;
    j["law"] = print_word(w.law);
    j["value"] = pword_to_json(k, w.value);
    line += "  law=" + print_word(w.law) + " tuple=(" + tt + ") value=" + print_pword(k, w.value) +
            " shared=" + print_pword(k, w.intersection);
  }
  out.add(std::move(j), std::move(line));
  return verdict_status(o, w.found);
}

int cmd_probe(Options const& o, Emitter& out) {
  auto k = load_construction(o.construction);
  auto r = free_probe(k, parse_pword(k, o.w1), parse_pword(k, o.w2), o.len);
  json j = {{"check", "free-probe"},
            {"construction", k.name()},
            {"w1", o.w1},
            {"w2", o.w2},
            {"max_len", r.max_len},
            {"verdict", r.no_relation},
            {"words_checked", r.words_checked}};
  std::string line = "free-probe " + k.name() + " (" + o.w1 + ", " + o.w2 + ") L=" + std::to_string(r.max_len) +
                     ": " + (r.no_relation ? "no relation" : "relation " + print_word(*r.relation));
  if (r.relation) j["relation"] = print_word(*r.relation);
  out.add(std::move(j), std::move(line));
  return verdict_status(o, r.no_relation);
}

int cmd_suite(Options const& o) {
  SuiteOptions so;
  so.only = o.only;
  auto r = run_suite(so);
  if (o.output == "json") {
    std::cout << dump_json(suite_to_json(r));
  } else {
    std::cout << suite_to_text(r);
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of CSX and XT properties of finite groups and free constructions", "varitas"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--output", o.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cap-order", o.cap_order, "largest group order to build")->check(CLI::PositiveNumber);
  app.add_option("--cap-budget", o.cap_budget, "tuple evaluations per scan")->check(CLI::PositiveNumber);

  auto group_opt = [&](CLI::App* c) { c->add_option("--group", o.group, "builtin:<name>, corpus name or file")->required(); };
  auto variety_opt = [&](CLI::App* c) { c->add_option("--variety", o.variety, "builtin:<name>, name or file"); };
  auto expect_opt = [&](CLI::App* c) {
    c->add_option("--expect", o.expect, "exit 1 unless the verdict matches")->check(CLI::IsMember({"true", "false"}));
  };

  auto* check = app.add_subcommand("check", "member, xt, csx or domain verdict");
  check->add_option("kind", o.kind)->required()->check(CLI::IsMember({"member", "xt", "csx", "domain"}));
  group_opt(check);
  variety_opt(check);
  check->add_option("--method", o.method, "direct, centralizer, condition, definition, normal-centralizer");
  expect_opt(check);

  auto* cent = app.add_subcommand("centralizer", "X-centralizer of an element");
  group_opt(cent);
  variety_opt(cent);
  cent->add_option("--x", o.element, "element label")->required();

  auto* subs = app.add_subcommand("subgroups", "subgroup lattice or maximal X-subgroups");
  group_opt(subs);
  variety_opt(subs);
  subs->add_flag("--maximal", o.maximal, "only maximal X-subgroups");

  auto* marg = app.add_subcommand("marginal", "marginal subgroup of words (default: variety basis)");
  auto* verb = app.add_subcommand("verbal", "verbal subgroup of words (default: variety basis)");
  for (auto* c : {marg, verb}) {
    group_opt(c);
    variety_opt(c);
    c->add_option("--word", o.words, "law such as [x1,x2]")->allow_extra_args(false);
  }

  auto* sent = app.add_subcommand("sentences", "Sub_X, Mal_X and X^1..X^n");
  group_opt(sent);
  variety_opt(sent);
  sent->add_option("--nmax", o.nmax)->check(CLI::PositiveNumber);

  auto* part = app.add_subcommand("partition-count", "covering and counting identity for subgroup reps");
  group_opt(part);
  part->add_option("--rep", o.reps, "generators of one representative, comma separated")->required()->allow_extra_args(false);
  expect_opt(part);

  auto* amal = app.add_subcommand("amalgam", "bounded checks on a free construction");
  amal->add_option("action", o.kind)->required()->check(CLI::IsMember({"check-malnormal", "not-xt-witness"}));
  amal->add_option("--construction", o.construction, "c3xc3, d2p:<p>, free:<A>,<B> or file")->required();
  amal->add_option("--factor", o.factor)->check(CLI::IsMember({"A", "B"}));
  amal->add_option("--subgroup", o.subgroup, "generators in the factor (default: the factor)");
  amal->add_option("--len", o.len);
  amal->add_option("--depth", o.depth);
  variety_opt(amal);
  expect_opt(amal);

  auto* probe = app.add_subcommand("probe", "relations between two elements of a free construction");
  probe->add_option("kind", o.kind)->required()->check(CLI::IsMember({"free"}));
  probe->add_option("--construction", o.construction)->required();
  probe->add_option("--w1", o.w1)->required();
  probe->add_option("--w2", o.w2)->required();
  probe->add_option("--len", o.len);
  expect_opt(probe);

  auto* suite = app.add_subcommand("suite", "every invariant over the default corpus");
  suite->add_option("--only", o.only, "property name prefixes")->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Limits l = limits();
    if (o.cap_order) l.order_cap = *o.cap_order;
    if (o.cap_budget) l.budget = *o.cap_budget;
    set_limits(l);
    kernels::set_jobs(o.jobs);

    if (suite->parsed()) return cmd_suite(o);
    Emitter out;
    int status = 0;
    if (check->parsed()) status = cmd_check(o, out);
    if (cent->parsed()) status = cmd_centralizer(o, out);
    if (subs->parsed()) status = cmd_subgroups(o, out);
    if (marg->parsed()) status = cmd_word_subgroup(o, out, true);
    if (verb->parsed()) status = cmd_word_subgroup(o, out, false);
    if (sent->parsed()) status = cmd_sentences(o, out);
    if (part->parsed()) status = cmd_partition(o, out);
    if (amal->parsed()) status = cmd_amalgam(o, out);
    if (probe->parsed()) status = cmd_probe(o, out);
    out.print(o.output);
    return status;
  } catch (BudgetExceeded const& e) {
    std::cerr << "varitas: budget exceeded: " << e.what() << '\n';
  } catch (Error const& e) {
    std::cerr << "varitas: " << e.what() << '\n';
  } catch (std::exception const& e) {
    std::cerr << "varitas: " << e.what() << '\n';
  }
  return 2;
}
