#include "mtss/schema.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mtss/inline_timestamps.hpp"

namespace mtss {

std::string_view event_type_name(EventType t) {
  switch (t) {
    case EventType::Dialogue: return "dialogue";
    case EventType::Sfx: return "sfx";
    case EventType::Music: return "music";
  }
  return {};
}

std::optional<EventType> parse_event_type(std::string_view name) {
  if (name == "dialogue") return EventType::Dialogue;
  if (name == "sfx") return EventType::Sfx;
  if (name == "music") return EventType::Music;
  return std::nullopt;
}

namespace {

template <class T>
T* find_by_id(std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

const ReferenceEntity* Script::find_reference(std::string_view id) const {
  return const_cast<Script*>(this)->find_reference(id);
}
const Shot* Script::find_shot(std::string_view id) const { return const_cast<Script*>(this)->find_shot(id); }
const AudioEvent* Script::find_event(std::string_view id) const {
  return const_cast<Script*>(this)->find_event(id);
}
ReferenceEntity* Script::find_reference(std::string_view id) { return find_by_id(references, id); }
Shot* Script::find_shot(std::string_view id) { return find_by_id(shots, id); }
AudioEvent* Script::find_event(std::string_view id) { return find_by_id(events, id); }

std::string_view stream_name(Stream s) {
  switch (s) {
    case Stream::Meta: return "meta";
    case Stream::Global: return "global";
    case Stream::References: return "references";
    case Stream::Shots: return "shots";
    case Stream::Events: return "events";
  }
  return {};
}

std::string_view kind_name(StructureError::Kind k) {
  using K = StructureError::Kind;
  switch (k) {
    case K::DuplicateId: return "DuplicateId";
    case K::BadIdPattern: return "BadIdPattern";
    case K::BadTimeRange: return "BadTimeRange";
    case K::FieldOnWrongCategory: return "FieldOnWrongCategory";
    case K::MissingRequiredField: return "MissingRequiredField";
    case K::BadInlineTimestamp: return "BadInlineTimestamp";
    case K::InvalidValue: return "InvalidValue";
  }
  return {};
}

std::string join_path(std::string_view stream, std::string_view id, std::string_view field) {
  std::string out(stream);
  if (!id.empty()) {
    out.push_back('/');
    out.append(id);
  }
  if (!field.empty()) {
    out.push_back('/');
    out.append(field);
  }
  return out;
}

std::string StructureError::path() const {
  if (stream == Stream::Meta || stream == Stream::Global) return join_path(stream_name(stream), field);
  std::string element = id;
  if (element.empty() && index) element = "#" + std::to_string(*index);
  return join_path(stream_name(stream), element, field);
}

namespace {

using Kind = StructureError::Kind;

class Checker {
 public:
  explicit Checker(std::vector<StructureError>& out) : out_(out) {}

  void add(Kind kind, Stream stream, std::optional<std::size_t> index, std::string id, std::string field,
           std::string message) {
    out_.push_back({kind, stream, index, std::move(id), std::move(field), std::move(message)});
  }

  void check_meta(const MediaMeta& meta) {
    if (meta.duration.count < 0) add(Kind::InvalidValue, Stream::Meta, {}, {}, "duration", "duration must be >= 0");
    if (!std::isfinite(meta.fps) || meta.fps <= 0.0)
      add(Kind::InvalidValue, Stream::Meta, {}, {}, "fps", "fps must be a positive number");
  }

  void check_global(const GlobalContext& global) {
    if (global.scene_description.empty())
      add(Kind::MissingRequiredField, Stream::Global, {}, {}, "scene_description", "scene_description is empty");
  }

  void check_references(const std::vector<ReferenceEntity>& refs) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const auto& r = refs[i];
      check_element_id(Stream::References, i, r.id, seen, [&](const ParsedId& p) {
        return p.kind == id_kind_for(r.category);
      });
      if (r.timestamp.count < 0)
        add(Kind::InvalidValue, Stream::References, i, r.id, "timestamp", "timestamp must be >= 0");
      const auto& anchor = r.appearance_anchor;
      if (anchor.detail_description.empty())
        add(Kind::MissingRequiredField, Stream::References, i, r.id, "appearance_anchor/detail_description",
            "detail_description is empty");
      if (r.category != Category::Person) {
        const std::pair<const std::optional<std::string>*, const char*> person_only[] = {
            {&anchor.clothing, "clothing"}, {&anchor.accessories, "accessories"}, {&anchor.hairstyle, "hairstyle"}};
        for (const auto& [value, name] : person_only) {
          if (value->has_value())
            add(Kind::FieldOnWrongCategory, Stream::References, i, r.id, std::string("appearance_anchor/") + name,
                std::string(name) + " is only allowed on person entities");
        }
      }
    }
  }

  void check_shots(const std::vector<Shot>& shots) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < shots.size(); ++i) {
      const auto& s = shots[i];
      check_element_id(Stream::Shots, i, s.id, seen, [](const ParsedId& p) { return p.kind == IdKind::Shot; });
      check_range(Stream::Shots, i, s.id, s.time_range);
      if (s.visual_description.empty()) {
        add(Kind::MissingRequiredField, Stream::Shots, i, s.id, "visual_description", "visual_description is empty");
      } else if (auto ts = extract_inline_timestamps(s.visual_description); !ts) {
        add(Kind::BadInlineTimestamp, Stream::Shots, i, s.id, "visual_description", ts.error().message);
      }
      const auto& c = s.camera;
      const auto filled = [](const std::optional<std::string>& v) { return v && !v->empty(); };
      if (!filled(c.movement) && !filled(c.perspective) && !filled(c.scale))
        add(Kind::MissingRequiredField, Stream::Shots, i, s.id, "camera",
            "camera needs at least one of movement, perspective, scale");
      check_links(Stream::Shots, i, s.id, "references_in_shot", s.references_in_shot, is_entity_id);
      check_links(Stream::Shots, i, s.id, "active_events", s.active_events, is_event_id);
    }
  }

  void check_events(const std::vector<AudioEvent>& events) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      check_element_id(Stream::Events, i, e.id, seen, [](const ParsedId& p) { return p.kind == IdKind::Event; });
      check_range(Stream::Events, i, e.id, e.time_range);
      if (e.speaker && !is_entity_id(*e.speaker))
        add(Kind::BadIdPattern, Stream::Events, i, e.id, "speaker", "speaker \"" + *e.speaker + "\" is not an entity id");
      switch (e.type) {
        case EventType::Dialogue:
          if (!e.speaker) add(Kind::MissingRequiredField, Stream::Events, i, e.id, "speaker", "dialogue needs a speaker");
          if (!e.line || e.line->empty())
            add(Kind::MissingRequiredField, Stream::Events, i, e.id, "line", "dialogue needs a line");
          break;
        case EventType::Sfx:
          if (e.line) add(Kind::FieldOnWrongCategory, Stream::Events, i, e.id, "line", "sfx events carry no line");
          break;
        case EventType::Music:
          if (e.speaker)
            add(Kind::FieldOnWrongCategory, Stream::Events, i, e.id, "speaker", "music events carry no speaker");
          if (e.line) add(Kind::FieldOnWrongCategory, Stream::Events, i, e.id, "line", "music events carry no line");
          break;
      }
    }
  }

 private:
  template <class Pred>
  void check_element_id(Stream stream, std::size_t i, const std::string& id, std::set<std::string>& seen,
                        Pred kind_ok) {
    const auto parsed = parse_id(id);
    if (!parsed || !kind_ok(*parsed)) {
      add(Kind::BadIdPattern, stream, i, id, "id", "id \"" + id + "\" does not match the expected PREFIX_N pattern");
      return;
    }
    if (!seen.insert(id).second)
      add(Kind::DuplicateId, stream, i, id, "id", "duplicate id \"" + id + "\" in " + std::string(stream_name(stream)));
  }

  void check_range(Stream stream, std::size_t i, const std::string& id, const TimeRange& r) {
    if (!r.valid())
      add(Kind::BadTimeRange, stream, i, id, "time_range",
          "time_range [" + format_seconds(r.start) + ", " + format_seconds(r.end) + "] needs 0 <= start < end");
  }

  template <class Pred>
  void check_links(Stream stream, std::size_t i, const std::string& id, const char* field,
                   const std::vector<std::string>& links, Pred pattern_ok) {
    std::set<std::string> seen;
    for (const auto& link : links) {
      if (!pattern_ok(link)) {
        add(Kind::BadIdPattern, stream, i, id, field, "\"" + link + "\" is not a valid id for " + field);
      } else if (!seen.insert(link).second) {
        add(Kind::DuplicateId, stream, i, id, field, "\"" + link + "\" listed twice in " + field);
      }
    }
  }

  std::vector<StructureError>& out_;
};

bool by_start_then_id(const TimeRange& ra, const std::string& ia, const TimeRange& rb, const std::string& ib) {
  if (ra.start != rb.start) return ra.start < rb.start;
  if (ia != ib) return id_less(ia, ib);
  return ra.end < rb.end;
}

}  // namespace

std::vector<StructureError> check_structure(const Script& script) {
  std::vector<StructureError> errors;
  Checker checker(errors);
  checker.check_meta(script.meta);
  checker.check_global(script.global);
  checker.check_references(script.references);
  checker.check_shots(script.shots);
  checker.check_events(script.events);
  return errors;
}

Result<Script, StructureError> build_script(MediaMeta meta, GlobalContext global,
                                            std::vector<ReferenceEntity> references, std::vector<Shot> shots,
                                            std::vector<AudioEvent> events) {
  Script script{std::move(meta), std::move(global), std::move(references), std::move(shots), std::move(events)};
  auto errors = check_structure(script);
  if (!errors.empty()) return fail(std::move(errors.front()));
  return script;
}

Script canonicalize(Script script) {
  const auto link_less = [](const std::string& a, const std::string& b) { return id_less(a, b); };
  std::stable_sort(script.references.begin(), script.references.end(),
                   [](const ReferenceEntity& a, const ReferenceEntity& b) {
                     if (a.category != b.category) return a.category < b.category;
                     return id_less(a.id, b.id);
                   });
  std::stable_sort(script.shots.begin(), script.shots.end(), [](const Shot& a, const Shot& b) {
    return by_start_then_id(a.time_range, a.id, b.time_range, b.id);
  });
  std::stable_sort(script.events.begin(), script.events.end(), [](const AudioEvent& a, const AudioEvent& b) {
    return by_start_then_id(a.time_range, a.id, b.time_range, b.id);
  });
  for (auto& shot : script.shots) {
    std::stable_sort(shot.references_in_shot.begin(), shot.references_in_shot.end(), link_less);
    std::stable_sort(shot.active_events.begin(), shot.active_events.end(), link_less);
  }
  return script;
}

}  // namespace mtss
