#pragma once

// Typed in-memory model of a Multi-Stream Scene Script: global context, the
// reference (entity) bank, the shot stream and the audio event stream.
// Values are plain aggregates; build_script() is the checked constructor.

#include <optional>
#include <string>
#include <vector>

#include "mtss/ids.hpp"
#include "mtss/result.hpp"
#include "mtss/time.hpp"

namespace mtss {

inline constexpr double kDefaultFps = 25.0;

enum class EventType { Dialogue, Sfx, Music };

std::string_view event_type_name(EventType t);
std::optional<EventType> parse_event_type(std::string_view name);

struct MediaMeta {
  Millis duration;
  double fps = kDefaultFps;

  bool operator==(const MediaMeta&) const = default;
};

struct AppearanceAnchor {
  std::string detail_description;
  // Person-only attributes.
  std::optional<std::string> clothing;
  std::optional<std::string> accessories;
  std::optional<std::string> hairstyle;

  bool operator==(const AppearanceAnchor&) const = default;
};

struct ReferenceEntity {
  std::string id;
  Category category = Category::Person;
  std::string semantic_description;
  // Stored uninterpreted; only range-checked.
  Millis timestamp;
  AppearanceAnchor appearance_anchor;

  bool operator==(const ReferenceEntity&) const = default;
};

struct Camera {
  std::optional<std::string> movement;
  std::optional<std::string> perspective;
  std::optional<std::string> scale;

  bool operator==(const Camera&) const = default;
};

struct Shot {
  std::string id;
  TimeRange time_range;
  /// May contain inline [t=...] markers.
  std::string visual_description;
  Camera camera;
  std::vector<std::string> references_in_shot;
  std::vector<std::string> active_events;

  bool operator==(const Shot&) const = default;
};

struct AudioEvent {
  std::string id;
  EventType type = EventType::Dialogue;
  TimeRange time_range;
  std::optional<std::string> speaker;
  std::optional<std::string> line;
  std::string description;

  bool operator==(const AudioEvent&) const = default;
};

struct GlobalContext {
  std::string scene_description;
  std::string global_style;
  std::string global_audio;

  bool operator==(const GlobalContext&) const = default;
};

struct Script {
  MediaMeta meta;
  GlobalContext global;
  std::vector<ReferenceEntity> references;
  std::vector<Shot> shots;
  std::vector<AudioEvent> events;

  bool operator==(const Script&) const = default;

  const ReferenceEntity* find_reference(std::string_view id) const;
  const Shot* find_shot(std::string_view id) const;
  const AudioEvent* find_event(std::string_view id) const;
  ReferenceEntity* find_reference(std::string_view id);
  Shot* find_shot(std::string_view id);
  AudioEvent* find_event(std::string_view id);
};

enum class Stream { Meta, Global, References, Shots, Events };

std::string_view stream_name(Stream s);

struct StructureError {
  enum class Kind {
    DuplicateId,
    BadIdPattern,
    BadTimeRange,
    FieldOnWrongCategory,
    MissingRequiredField,
    BadInlineTimestamp,
    InvalidValue,
  };

  Kind kind;
  Stream stream;
  /// Element position within its stream (absent for meta/global).
  std::optional<std::size_t> index;
  /// Owning element id, when the element has one.
  std::string id;
  /// Field path relative to the element, e.g. "time_range" or "camera".
  std::string field;
  std::string message;

  /// Document path: "shots/SHOT_1/time_range", "meta/fps", ...
  std::string path() const;
};

std::string_view kind_name(StructureError::Kind k);

/// Every type-level invariant violation, in stream order. Empty iff valid.
std::vector<StructureError> check_structure(const Script& script);

Result<Script, StructureError> build_script(MediaMeta meta, GlobalContext global,
                                            std::vector<ReferenceEntity> references,
                                            std::vector<Shot> shots, std::vector<AudioEvent> events);

/// Stable ordering: shots and events by (start, id), references by
/// (category, suffix), link lists by id suffix. Idempotent.
Script canonicalize(Script script);

/// Builds a document path from components: path_of("shots", "SHOT_1", "time_range").
std::string join_path(std::string_view stream, std::string_view id, std::string_view field = {});

}  // namespace mtss
