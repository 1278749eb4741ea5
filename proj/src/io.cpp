#include "varitas/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "varitas/error.hpp"

namespace varitas {

using nlohmann::json;

std::vector<std::string> const& corpus_names() {
  static std::vector<std::string> const names = {
      "C2",  "C3",  "C4",  "C5",  "C6",  "C7",    "C8",    "C9",    "C10",
      "C11", "C12", "C2xC2", "C2xC4", "S3", "S4",  "A4",    "A5",    "D8",
      "D10", "D12", "Q8",  "F21", "S3xC2"};
  return names;
}

std::vector<FiniteGroup> const& default_corpus() {
  static std::vector<FiniteGroup> const corpus = [] {
    std::vector<FiniteGroup> out;
    for (auto const& n : corpus_names()) out.push_back(builtin_by_name(n));
    return out;
  }();
  return corpus;
}

namespace {

std::optional<std::size_t> number_after(std::string_view s, std::string_view prefix) {
  if (!s.starts_with(prefix) || s.size() == prefix.size()) return std::nullopt;
  std::size_t v = 0;
  auto const* first = s.data() + prefix.size();
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

FiniteGroup builtin_by_name(std::string_view name) {
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    std::string_view const family = name.substr(0, colon);
    std::size_t param = 0;
    std::string_view const rest = name.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), param);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw InvalidArgument("bad builtin parameter in '" + std::string(name) + "'");
    }
    return builtin_group(family, param);
  }
  if (name == "quaternion8" || name == "Q8") return quaternion8();
  if (name == "frobenius21" || name == "F21") return frobenius21();
  if (auto x = name.find('x'); x != std::string_view::npos) {
    return direct_product(builtin_by_name(name.substr(0, x)), builtin_by_name(name.substr(x + 1)));
  }
  if (auto n = number_after(name, "C")) return cyclic(*n);
  if (auto n = number_after(name, "S")) return symmetric(*n);
  if (auto n = number_after(name, "A")) return alternating(*n);
  if (auto n = number_after(name, "D")) return dihedral(*n);
  if (auto n = number_after(name, "E")) return elementary_abelian(*n);
  throw InvalidArgument("unknown builtin group '" + std::string(name) + "'");
}

json read_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (json::parse_error const& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

namespace {

template <class T>
T field(json const& doc, char const* key, char const* what) {
  if (!doc.contains(key)) {
    throw InvalidArgument(std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (json::exception const& e) {
    throw InvalidArgument(std::string(what) + ": field '" + key + "': " + e.what());
  }
}

}  // namespace

FiniteGroup group_from_json(json const& doc) {
  if (!doc.is_object()) throw InvalidArgument("group file: expected an object");
  std::string const kind = field<std::string>(doc, "kind", "group file");
  std::string name = doc.value("name", std::string{});
  FiniteGroup g;
  if (kind == "builtin") {
    json const& b = doc.at("builtin");
    g = builtin_group(field<std::string>(b, "family", "group file builtin"),
                      field<std::size_t>(b, "param", "group file builtin"));
  } else if (kind == "permutations") {
    auto const texts = field<std::vector<std::string>>(doc, "generators", "group file");
    std::vector<Permutation> gens;
    for (auto const& t : texts) {
      gens.push_back(Permutation::parse(t));
      if (gens.back().degree() > 12) {
        throw InvalidArgument("group file: generators must act on at most 12 points");
      }
    }
    g = FiniteGroup::from_permutations(name.empty() ? "G" : name, gens);
  } else if (kind == "table") {
    auto const table = field<std::vector<std::vector<Elem>>>(doc, "table", "group file");
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = field<std::vector<std::string>>(doc, "labels", "group file");
    g = FiniteGroup::from_table(name.empty() ? "G" : name, table, std::move(labels));
  } else {
    throw InvalidArgument("group file: unknown kind '" + kind + "'");
  }
  return name.empty() ? g : g.renamed(name);
}

FiniteGroup load_group(std::string_view ref) {
  if (ref.starts_with("builtin:")) return builtin_by_name(ref.substr(8));
  for (std::size_t i = 0; i < corpus_names().size(); ++i) {
    if (corpus_names()[i] == ref) return default_corpus()[i];
  }
  std::string const path(ref);
  if (!std::filesystem::exists(path)) {
    throw InvalidArgument("'" + path + "' is neither a builtin group nor a file");
  }
  return group_from_json(read_json_file(path));
}

VarietySpec variety_from_json(json const& doc) {
  if (!doc.is_object()) throw InvalidArgument("variety file: expected an object");
  VarietySpec x;
  x.name = field<std::string>(doc, "name", "variety file");
  for (auto const& text : field<std::vector<std::string>>(doc, "basis", "variety file")) {
    x.basis.push_back(parse_word(text));
  }
  x.members_nilpotent = doc.value("members_nilpotent", false);
  return x;
}

VarietySpec load_variety(std::string_view ref) {
  if (ref.starts_with("builtin:")) return VarietySpec::builtin(ref.substr(8));
  std::string const path(ref);
  if (std::filesystem::exists(path)) return variety_from_json(read_json_file(path));
  return VarietySpec::builtin(ref);
}

}  // namespace varitas
