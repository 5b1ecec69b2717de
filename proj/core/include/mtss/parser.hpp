#pragma once

// MTSS document codec (.mtss.json). The concrete syntax is a closed-schema
// subset of the document dialect in document.hpp:
//
//   {
//     "meta": {"duration": 12.000, "fps": 25},
//     "global": {"scene_description": ..., "global_style": ..., "global_audio": ...},
//     "references": [ {id, category, semantic_description, timestamp,
//                      appearance_anchor: {detail_description, clothing?,
//                      accessories?, hairstyle?}} ],
//     "shots": [ {id, time_range: [start, end], visual_description,
//                 camera: {movement?, perspective?, scale?},
//                 references_in_shot: [...], active_events: [...]} ],
//     "events": [ {id, type, time_range, speaker?, line?, description} ]
//   }
//
// serialize() always writes the canonical form; parse_document() accepts any
// member order, omitted optional members and omitted (empty) streams.

#include <string>
#include <string_view>
#include <vector>

#include "mtss/document.hpp"
#include "mtss/inline_timestamps.hpp"
#include "mtss/result.hpp"
#include "mtss/schema.hpp"

namespace mtss {

using ParseResult = Result<Script, std::vector<ParseDiagnostic>>;

/// Parses and structurally checks a document. Relational lint is not run.
/// The returned script keeps document order (it is not canonicalized).
ParseResult parse_document(std::string_view text);

/// Canonical text: canonicalized streams, fixed member order, 2-space
/// indentation, times with three decimals, trailing newline.
std::string serialize(const Script& script);

/// Tree form of serialize() (does not canonicalize).
Value to_value(const Script& script);
Value to_value(const ReferenceEntity& entity);
Value to_value(const Shot& shot);
Value to_value(const AudioEvent& event);
Value to_value(const TimeRange& range);

// Record decoders, shared with edit-script parsing. Diagnostics are appended;
// the return value is meaningful only when nothing was appended.
ReferenceEntity decode_reference(const Value& v, std::vector<ParseDiagnostic>& diags);
Shot decode_shot(const Value& v, std::vector<ParseDiagnostic>& diags);
AudioEvent decode_event(const Value& v, std::vector<ParseDiagnostic>& diags);
std::optional<TimeRange> decode_time_range(const Value& v);
std::optional<Millis> decode_time(const Value& v);

/// "file:line:col: P004: message"
std::string format_diagnostic(const ParseDiagnostic& d, std::string_view source_name = {});

}  // namespace mtss
