#pragma once

// Relational lint over a Script: identity links (reference ids cited by
// shots and events) and temporal links (shot/event time ranges, inline
// timestamps). Findings are data; validate() never fails.
//
// Rule catalog
//   E001 error    references_in_shot id missing from the reference bank
//   E002 error    event speaker id missing from the reference bank
//   E003 error    active_events id missing from the event stream
//   E004 error    shots overlap in time
//   E005 error    inline timestamp outside its shot's time_range
//   E006 error    listed active event does not overlap the shot
//   E007 error    time beyond media duration
//   E008 error    event fields inconsistent with its type
//   W101 warning  entity never cited by a shot or event
//   W102 warning  overlapping event not listed in active_events
//   W103 warning  dialogue speaker absent from an overlapping shot
//   W104 warning  gap between consecutive shots
//   W105 warning  sfx event without a source entity

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtss/result.hpp"
#include "mtss/schema.hpp"

namespace mtss {

enum class Severity { Error, Warning };

std::string_view severity_name(Severity s);

struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  /// Document path of the offending field, e.g. "shots/SHOT_2/references_in_shot".
  std::string subject;
  std::string message;
  std::vector<std::string> related;

  bool operator==(const Diagnostic&) const = default;
};

struct DiagnosticSet {
  std::vector<Diagnostic> items;
  std::size_t error_count = 0;
  std::size_t warning_count = 0;

  bool empty() const { return items.empty(); }
  bool has_code(std::string_view code) const;
  std::size_t count(std::string_view code) const;

  /// Sorts by (subject, code, message, related) and recomputes counts.
  void normalize();

  bool operator==(const DiagnosticSet&) const = default;
};

struct RuleInfo {
  std::string_view code;
  Severity severity;
  std::string_view title;
  std::string_view description;
  /// The cross-stream link the rule checks.
  std::string_view anchor;
};

std::span<const RuleInfo> rule_catalog();

struct UnknownRuleCode {
  std::string code;
};

Result<RuleInfo, UnknownRuleCode> explain_rule(std::string_view code);

/// Runs every rule. The script need not be canonical; rules that only make
/// sense on structurally valid input (e.g. E008) still run on raw values.
DiagnosticSet validate(const Script& script);

/// Copy of `set` with every warning raised to error severity.
DiagnosticSet promote_warnings(DiagnosticSet set);

/// Items of `after` not present in `before`.
DiagnosticSet diagnostics_delta(const DiagnosticSet& before, const DiagnosticSet& after);

/// `code<TAB>severity<TAB>path<TAB>message`
std::string format_diagnostic_line(const Diagnostic& d);
/// `path: severity[code]: message`
std::string format_diagnostic_text(const Diagnostic& d);

}  // namespace mtss
