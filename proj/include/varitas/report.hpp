#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "varitas/group.hpp"
#include "varitas/properties.hpp"

namespace varitas {

// ---------------------------------------------------------------------------
// Report emission

/// {"check", "group", "variety", "method", "verdict", "witness"?, "stats"}.
/// Witness elements are written by label and subgroups as ascending label
/// lists of their members.
nlohmann::json report_to_json(PropertyReport const& r, FiniteGroup const& g);
/// One line: "csx S3 abelian direct: false  M={...} g=... h=...".
std::string report_to_text(PropertyReport const& r, FiniteGroup const& g);

/// Pretty-printed with a trailing newline.  Object keys are sorted, so equal
/// documents produce equal bytes.
std::string dump_json(nlohmann::json const& doc);

// ---------------------------------------------------------------------------
// Corpus suite

struct SuiteItem {
  std::string property;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  /// Cells outside the property's hypotheses.
  std::uint64_t skipped = 0;
  /// "group/variety: detail" for each failing cell, in corpus order.
  std::vector<std::string> failures;
};

struct SuiteResult {
  /// Sorted by property name.
  std::vector<SuiteItem> items;
  bool ok() const;
};

struct SuiteOptions {
  /// Property name prefixes to run ("properties.", "group.csx-finite", ...);
  /// empty runs everything.
  std::vector<std::string> only;
};

/// Runs every invariant over the default corpus, the built-in varieties and
/// the built-in constructions.  Independent tasks are spread over the
/// kernel thread pool; the result does not depend on the thread count.
SuiteResult run_suite(SuiteOptions const& opts = {});
/// Property names known to run_suite, sorted.
std::vector<std::string> suite_properties();

/// [{"property", "passed", "failed", "skipped", "failures"}, ...]
nlohmann::json suite_to_json(SuiteResult const& r);
/// One line per property.
std::string suite_to_text(SuiteResult const& r);

}  // namespace varitas
