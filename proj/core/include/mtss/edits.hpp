#pragma once

// Local edits over scripts. Every edit consumes an immutable Script and
// produces a new canonical one plus a Footprint: the canonical field paths
// whose serialization changed, the lint rules touched by those paths and the
// diagnostics the edit introduced.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtss/document.hpp"
#include "mtss/result.hpp"
#include "mtss/schema.hpp"
#include "mtss/validator.hpp"

namespace mtss {

/// Replace one field, addressed by document path
/// ("shots/SHOT_1/visual_description", "events/EVENT_2/time_range",
/// "references/PERSON_1/appearance_anchor/clothing", "meta/duration", ...).
/// A null value clears an optional field.
struct SetField {
  std::string path;
  Value value;
};
struct AddEntity {
  ReferenceEntity entity;
};
struct RemoveEntity {
  std::string id;
  bool cascade = false;
};
struct AddEvent {
  AudioEvent event;
};
struct RemoveEvent {
  std::string id;
  bool cascade = false;
};
struct RebindSpeaker {
  std::string event_id;
  std::string entity_id;
};
struct RetimeShot {
  std::string shot_id;
  TimeRange range;
  bool relink = true;
};
struct SplitShot {
  std::string shot_id;
  Millis at;
};
struct MergeShots {
  std::string first_id;
  std::string second_id;
};

using Edit = std::variant<SetField, AddEntity, RemoveEntity, AddEvent, RemoveEvent, RebindSpeaker, RetimeShot,
                          SplitShot, MergeShots>;

std::string_view edit_name(const Edit& edit);

struct Footprint {
  std::vector<std::string> changed_paths;
  std::vector<std::string> revalidated;
  DiagnosticSet new_diagnostics;
};

struct EditOutcome {
  Script script;
  Footprint footprint;
};

struct EditError {
  enum class Kind {
    UnknownId,
    WouldDangle,
    InvalidPath,
    TypeMismatch,
    CutOutsideRange,
    NotAdjacent,
    StructureViolation,
  };

  Kind kind;
  std::string message;
  /// Dependent paths for WouldDangle; offending paths for StructureViolation.
  std::vector<std::string> paths;
};

std::string_view kind_name(EditError::Kind k);

Result<EditOutcome, EditError> apply(const Script& script, const Edit& edit);

Result<EditOutcome, EditError> split_shot(const Script& script, std::string_view shot_id, Millis at);
Result<EditOutcome, EditError> merge_shots(const Script& script, std::string_view first_id,
                                           std::string_view second_id);

/// Footprint between two scripts, computed from their canonical serializations.
Footprint compute_footprint(const Script& before, const Script& after);

/// Lint rules whose inputs include the given document path.
std::vector<std::string> rules_touching(std::string_view path);

/// Keeps only the markers for which keep(time) holds, preserving all other
/// text byte for byte. Descriptions with malformed markers are returned as is.
template <class Pred>
std::string filter_inline_markers(std::string_view description, Pred keep);

// Edit scripts: one JSON-like object per line; blank lines and lines starting
// with '#' are skipped.
//
//   {"op": "set_field", "path": "shots/SHOT_1/visual_description", "value": "..."}
//   {"op": "add_entity", "entity": {...reference record...}}
//   {"op": "remove_entity", "id": "PERSON_1", "cascade": true}
//   {"op": "add_event", "event": {...event record...}}
//   {"op": "remove_event", "id": "EVENT_3", "cascade": false}
//   {"op": "rebind_speaker", "event": "EVENT_1", "entity": "PERSON_2"}
//   {"op": "retime_shot", "shot": "SHOT_1", "time_range": [0, 6], "relink": true}
//   {"op": "split_shot", "shot": "SHOT_1", "at": 3.0}
//   {"op": "merge_shots", "first": "SHOT_1", "second": "SHOT_2"}
Result<std::vector<Edit>, std::vector<ParseDiagnostic>> parse_edit_script(std::string_view text);

Value to_value(const Edit& edit);
Value to_value(const Footprint& footprint);
Value to_value(const Diagnostic& d);

}  // namespace mtss

#include "mtss/inline_timestamps.hpp"

namespace mtss {

template <class Pred>
std::string filter_inline_markers(std::string_view description, Pred keep) {
  auto extracted = extract_inline_timestamps(description);
  if (!extracted) return std::string(description);
  std::vector<InlineTimestamp> kept;
  std::size_t removed = 0;
  for (const auto& ts : extracted->timestamps) {
    if (keep(ts.time)) {
      auto moved = ts;
      moved.text_offset -= removed;
      kept.push_back(std::move(moved));
    } else {
      removed += ts.marker.size();
    }
  }
  return reinsert_timestamps(extracted->stripped_text, kept);
}

}  // namespace mtss
