#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "varitas/group.hpp"
#include "varitas/variety.hpp"

namespace varitas {

/// Names of the default corpus, in suite order.
std::vector<std::string> const& corpus_names();
/// The default corpus groups (built once, shared).
std::vector<FiniteGroup> const& default_corpus();

/// Resolves a short builtin name: C<n>, S<n>, A<n>, D<2n>, Q8, F21, E<p^k>,
/// and products such as S3xC2.  Also accepts family:param forms
/// (cyclic:6, symmetric:4, ...), quaternion8 and frobenius21.
FiniteGroup builtin_by_name(std::string_view name);

/// "builtin:<name>", a bare corpus name, or a path to a group file.
FiniteGroup load_group(std::string_view ref);
FiniteGroup group_from_json(nlohmann::json const& doc);

/// "builtin:<name>", a bare builtin variety name, or a path to a variety file.
VarietySpec load_variety(std::string_view ref);
VarietySpec variety_from_json(nlohmann::json const& doc);

/// Reads and parses a JSON file; syntax errors become ParseError with the
/// byte offset.
nlohmann::json read_json_file(std::string const& path);

}  // namespace varitas
