#pragma once

#include <string>
#include <vector>

#include "mtss/document.hpp"
#include "mtss/result.hpp"
#include "mtss/schema.hpp"
#include "mtss/validator.hpp"

namespace mtss {

/// How entity ids inside free text are expanded with appearance details.
enum class MentionExpansion {
  None,   ///< display name only
  First,  ///< detail in parentheses after the first mention only
  Every,  ///< detail after every mention (the redundant baseline)
};

struct ShotPrompt {
  std::string shot_id;
  TimeRange time_range;
  std::string prompt_text;
  /// Set when the stored active_events disagree with temporal overlap.
  std::vector<std::string> warnings;

  bool operator==(const ShotPrompt&) const = default;
};

struct ValidationErrorsPresent {
  DiagnosticSet diagnostics;
};

/// Display name for an entity: the head of its semantic_description (first
/// clause, at most six words), falling back to the id.
std::string display_name(const ReferenceEntity& entity);

/// One paragraph: scene description, then shots in time order with events
/// interleaved at their inline-timestamp anchors, then style and ambient audio.
Result<std::string, ValidationErrorsPresent> render_monolithic(const Script& script, bool expand_first_mention);
Result<std::string, ValidationErrorsPresent> render_monolithic(const Script& script, MentionExpansion mode);

/// One self-contained prompt per shot, in canonical shot order.
Result<std::vector<ShotPrompt>, ValidationErrorsPresent> render_shot_prompts(const Script& script);

Value to_value(const ShotPrompt& prompt);
Value to_value(const std::vector<ShotPrompt>& prompts);

}  // namespace mtss
