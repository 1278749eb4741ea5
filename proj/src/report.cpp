#include "varitas/report.hpp"

#include <sstream>

#include "varitas/word.hpp"

namespace varitas {

namespace {

nlohmann::json labels(FiniteGroup const& g, std::span<Elem const> elems) {
  auto out = nlohmann::json::array();
  for (auto e : elems) out.push_back(g.label(e));
  return out;
}

std::string set_text(FiniteGroup const& g, SubgroupSet const& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.members().size(); ++i) {
    if (i) s += ", ";
    s += g.label(h.members()[i]);
  }
  return s + "}";
}

}  // namespace

nlohmann::json report_to_json(PropertyReport const& r, FiniteGroup const& g) {
  nlohmann::json j;
  j["check"] = r.check;
  j["group"] = r.group;
  j["variety"] = r.variety;
  j["method"] = to_string(r.method);
  j["verdict"] = r.verdict;
  j["stats"] = nlohmann::json::object();
  for (auto const& [k, v] : r.stats) j["stats"][k] = v;
  if (r.witness) {
    auto const& w = *r.witness;
    nlohmann::json wj = nlohmann::json::object();
    if (!w.elements.empty()) {
      wj["elements"] = nlohmann::json::object();
      for (auto const& [role, e] : w.elements) wj["elements"][role] = g.label(e);
    }
    if (!w.subgroups.empty()) {
      wj["subgroups"] = nlohmann::json::object();
      for (auto const& [role, h] : w.subgroups) wj["subgroups"][role] = labels(h.parent(), h.members());
    }
    if (w.word) wj["word"] = print_word(*w.word);
    if (!w.tuple.empty()) wj["tuple"] = labels(g, w.tuple);
    if (!w.note.empty()) wj["note"] = w.note;
    j["witness"] = std::move(wj);
  }
  return j;
}

std::string report_to_text(PropertyReport const& r, FiniteGroup const& g) {
  std::ostringstream out;
  out << r.check << ' ' << r.group;
  if (!r.variety.empty()) out << ' ' << r.variety;
  out << ' ' << to_string(r.method) << ": " << (r.verdict ? "true" : "false");
  if (r.witness) {
    auto const& w = *r.witness;
    for (auto const& [role, h] : w.subgroups) out << "  " << role << '=' << set_text(h.parent(), h);
    for (auto const& [role, e] : w.elements) out << "  " << role << '=' << g.label(e);
    if (w.word) out << "  word=" << print_word(*w.word);
    if (!w.tuple.empty()) {
      out << "  tuple=(";
      for (std::size_t i = 0; i < w.tuple.size(); ++i) out << (i ? ", " : "") << g.label(w.tuple[i]);
      out << ')';
    }
    if (!w.note.empty()) out << "  (" << w.note << ')';
  }
  return out.str();
}

std::string dump_json(nlohmann::json const& doc) { return doc.dump(2) + "\n"; }

bool SuiteResult::ok() const {
  for (auto const& i : items) {
    if (i.failed) return false;
  }
  return true;
}

nlohmann::json suite_to_json(SuiteResult const& r) {
  auto out = nlohmann::json::array();
  for (auto const& i : r.items) {
    out.push_back({{"property", i.property},
                   {"passed", i.passed},
                   {"failed", i.failed},
                   {"skipped", i.skipped},
                   {"failures", i.failures}});
  }
  return out;
}

std::string suite_to_text(SuiteResult const& r) {
  std::ostringstream out;
  for (auto const& i : r.items) {
    out << (i.failed ? "FAIL " : "ok   ") << i.property << "  " << i.passed << '/'
        << (i.passed + i.failed);
    if (i.skipped) out << "  (" << i.skipped << " outside hypotheses)";
    out << '\n';
    for (auto const& f : i.failures) out << "       " << f << '\n';
  }
  return out.str();
}

}  // namespace varitas
