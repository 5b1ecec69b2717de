#include "mtss/edits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "mtss/parser.hpp"
#include "mtss/path_diff.hpp"
#include "mtss/timeline.hpp"
#include "object_reader.hpp"

namespace mtss {

std::string_view edit_name(const Edit& edit) {
  struct Namer {
    std::string_view operator()(const SetField&) const { return "set_field"; }
    std::string_view operator()(const AddEntity&) const { return "add_entity"; }
    std::string_view operator()(const RemoveEntity&) const { return "remove_entity"; }
    std::string_view operator()(const AddEvent&) const { return "add_event"; }
    std::string_view operator()(const RemoveEvent&) const { return "remove_event"; }
    std::string_view operator()(const RebindSpeaker&) const { return "rebind_speaker"; }
    std::string_view operator()(const RetimeShot&) const { return "retime_shot"; }
    std::string_view operator()(const SplitShot&) const { return "split_shot"; }
    std::string_view operator()(const MergeShots&) const { return "merge_shots"; }
  };
  return std::visit(Namer{}, edit);
}

std::string_view kind_name(EditError::Kind k) {
  using K = EditError::Kind;
  switch (k) {
    case K::UnknownId: return "UnknownId";
    case K::WouldDangle: return "WouldDangle";
    case K::InvalidPath: return "InvalidPath";
    case K::TypeMismatch: return "TypeMismatch";
    case K::CutOutsideRange: return "CutOutsideRange";
    case K::NotAdjacent: return "NotAdjacent";
    case K::StructureViolation: return "StructureViolation";
  }
  return {};
}

std::vector<std::string> rules_touching(std::string_view path) {
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0; pos <= path.size();) {
    const auto slash = path.find('/', pos);
    const auto end = slash == std::string_view::npos ? path.size() : slash;
    parts.push_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  const auto stream = parts.empty() ? std::string_view{} : parts[0];
  const auto field = parts.size() >= 3 ? parts[2] : std::string_view{};
  std::vector<std::string> codes;
  const auto add = [&](std::initializer_list<const char*> cs) { codes.insert(codes.end(), cs.begin(), cs.end()); };

  if (stream == "meta") {
    if (parts.size() < 2 || parts[1] == "duration") add({"E007"});
  } else if (stream == "references") {
    if (parts.size() == 2) add({"E001", "E002", "W101", "W103"});
    else if (field == "timestamp") add({"E007"});
  } else if (stream == "shots") {
    if (parts.size() == 2) add({"E001", "E003", "E004", "E005", "E006", "E007", "W101", "W102", "W103", "W104"});
    else if (field == "time_range") add({"E004", "E005", "E006", "E007", "W102", "W103", "W104"});
    else if (field == "visual_description") add({"E005", "E007"});
    else if (field == "references_in_shot") add({"E001", "W101", "W103"});
    else if (field == "active_events") add({"E003", "E006", "W102"});
  } else if (stream == "events") {
    if (parts.size() == 2) add({"E002", "E003", "E006", "E007", "E008", "W101", "W102", "W103", "W105"});
    else if (field == "time_range") add({"E006", "E007", "W102", "W103"});
    else if (field == "type") add({"E008", "W103", "W105"});
    else if (field == "speaker") add({"E002", "E008", "W101", "W103", "W105"});
    else if (field == "line") add({"E008"});
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

Footprint compute_footprint(const Script& before, const Script& after) {
  Footprint fp;
  auto diff = diff_document_text(serialize(before), serialize(after));
  if (diff) fp.changed_paths = std::move(diff.value());
  std::set<std::string> rules;
  for (const auto& p : fp.changed_paths) {
    for (auto& code : rules_touching(p)) rules.insert(std::move(code));
  }
  fp.revalidated.assign(rules.begin(), rules.end());
  fp.new_diagnostics = diagnostics_delta(validate(before), validate(after));
  return fp;
}

namespace {

using K = EditError::Kind;

EditError error(K kind, std::string message, std::vector<std::string> paths = {}) {
  return {kind, std::move(message), std::move(paths)};
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto slash = path.find('/', pos);
    parts.emplace_back(path.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos));
    if (slash == std::string_view::npos) break;
    pos = slash + 1;
  }
  return parts;
}

// Field setters. Each returns an error message on type mismatch.
using SetterResult = std::optional<EditError>;

SetterResult set_string(std::string& target, const Value& v, const std::string& path) {
  if (!v.is_string()) return error(K::TypeMismatch, path + " expects a string");
  target = v.text();
  return std::nullopt;
}

SetterResult set_optional_string(std::optional<std::string>& target, const Value& v, const std::string& path) {
  if (v.is_null()) {
    target.reset();
    return std::nullopt;
  }
  if (!v.is_string()) return error(K::TypeMismatch, path + " expects a string or null");
  target = v.text();
  return std::nullopt;
}

SetterResult set_time(Millis& target, const Value& v, const std::string& path) {
  auto t = decode_time(v);
  if (!t) return error(K::TypeMismatch, path + " expects a time in seconds");
  target = *t;
  return std::nullopt;
}

SetterResult set_range(TimeRange& target, const Value& v, const std::string& path) {
  auto r = decode_time_range(v);
  if (!r) return error(K::TypeMismatch, path + " expects a [start, end] pair");
  target = *r;
  return std::nullopt;
}

SetterResult set_id_list(std::vector<std::string>& target, const Value& v, const std::string& path) {
  if (!v.is_array()) return error(K::TypeMismatch, path + " expects an array of ids");
  std::vector<std::string> ids;
  for (const auto& item : v.items()) {
    if (!item.is_string()) return error(K::TypeMismatch, path + " expects an array of ids");
    ids.push_back(item.text());
  }
  target = std::move(ids);
  return std::nullopt;
}

SetterResult apply_set_field(Script& s, const SetField& edit) {
  const auto parts = split_path(edit.path);
  const auto& p = edit.path;
  const auto& v = edit.value;
  const auto invalid = [&] { return error(K::InvalidPath, "\"" + p + "\" is not a settable field"); };
  if (parts.size() < 2) return invalid();

  if (parts[0] == "meta" && parts.size() == 2) {
    if (parts[1] == "duration") return set_time(s.meta.duration, v, p);
    if (parts[1] == "fps") {
      double fps = 0.0;
      const auto& lex = v.text();
      if (!v.is_number() || std::from_chars(lex.data(), lex.data() + lex.size(), fps).ec != std::errc{})
        return error(K::TypeMismatch, p + " expects a number");
      s.meta.fps = fps;
      return std::nullopt;
    }
    return invalid();
  }
  if (parts[0] == "global" && parts.size() == 2) {
    if (parts[1] == "scene_description") return set_string(s.global.scene_description, v, p);
    if (parts[1] == "global_style") return set_string(s.global.global_style, v, p);
    if (parts[1] == "global_audio") return set_string(s.global.global_audio, v, p);
    return invalid();
  }
  if (parts.size() < 3) return invalid();
  const auto& id = parts[1];
  const auto& field = parts[2];
  const auto unknown = [&] { return error(K::UnknownId, "no element " + id + " in " + parts[0]); };

  if (parts[0] == "references") {
    auto* r = s.find_reference(id);
    if (!r) return unknown();
    if (parts.size() == 3) {
      if (field == "semantic_description") return set_string(r->semantic_description, v, p);
      if (field == "timestamp") return set_time(r->timestamp, v, p);
      if (field == "category") {
        if (!v.is_string()) return error(K::TypeMismatch, p + " expects a string");
        auto c = parse_category(v.text());
        if (!c) return error(K::TypeMismatch, p + " expects one of person, object, animal, scene");
        r->category = *c;
        return std::nullopt;
      }
      return invalid();
    }
    if (parts.size() == 4 && field == "appearance_anchor") {
      auto& a = r->appearance_anchor;
      if (parts[3] == "detail_description") return set_string(a.detail_description, v, p);
      if (parts[3] == "clothing") return set_optional_string(a.clothing, v, p);
      if (parts[3] == "accessories") return set_optional_string(a.accessories, v, p);
      if (parts[3] == "hairstyle") return set_optional_string(a.hairstyle, v, p);
    }
    return invalid();
  }
  if (parts[0] == "shots") {
    auto* shot = s.find_shot(id);
    if (!shot) return unknown();
    if (parts.size() == 3) {
      if (field == "visual_description") return set_string(shot->visual_description, v, p);
      if (field == "time_range") return set_range(shot->time_range, v, p);
      if (field == "references_in_shot") return set_id_list(shot->references_in_shot, v, p);
      if (field == "active_events") return set_id_list(shot->active_events, v, p);
      return invalid();
    }
    if (parts.size() == 4 && field == "camera") {
      if (parts[3] == "movement") return set_optional_string(shot->camera.movement, v, p);
      if (parts[3] == "perspective") return set_optional_string(shot->camera.perspective, v, p);
      if (parts[3] == "scale") return set_optional_string(shot->camera.scale, v, p);
    }
    return invalid();
  }
  if (parts[0] == "events") {
    auto* ev = s.find_event(id);
    if (!ev) return unknown();
    if (parts.size() != 3) return invalid();
    if (field == "description") return set_string(ev->description, v, p);
    if (field == "time_range") return set_range(ev->time_range, v, p);
    if (field == "speaker") return set_optional_string(ev->speaker, v, p);
    if (field == "line") return set_optional_string(ev->line, v, p);
    if (field == "type") {
      if (!v.is_string()) return error(K::TypeMismatch, p + " expects a string");
      auto t = parse_event_type(v.text());
      if (!t) return error(K::TypeMismatch, p + " expects one of dialogue, sfx, music");
      ev->type = *t;
      return std::nullopt;
    }
    return invalid();
  }
  return invalid();
}

template <class T>
void erase_value(std::vector<T>& v, const T& x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
}

std::vector<std::string> inferred_for(const Script& s, const Shot& shot) {
  return TimelineIndex(s).events_overlapping(shot.time_range);
}

class Applier {
 public:
  explicit Applier(Script& s) : s_(s) {}

  SetterResult operator()(const SetField& e) { return apply_set_field(s_, e); }

  SetterResult operator()(const AddEntity& e) {
    s_.references.push_back(e.entity);
    return std::nullopt;
  }

  SetterResult operator()(const RemoveEntity& e) {
    if (!s_.find_reference(e.id)) return error(K::UnknownId, "no entity " + e.id);
    std::vector<std::string> dependents;
    std::vector<std::string> blocking;
    for (const auto& shot : s_.shots) {
      if (std::count(shot.references_in_shot.begin(), shot.references_in_shot.end(), e.id))
        dependents.push_back(join_path("shots", shot.id, "references_in_shot"));
    }
    for (const auto& ev : s_.events) {
      if (ev.speaker != e.id) continue;
      const auto path = join_path("events", ev.id, "speaker");
      dependents.push_back(path);
      if (ev.type == EventType::Dialogue) blocking.push_back(path);
    }
    if (!e.cascade && !dependents.empty())
      return error(K::WouldDangle, e.id + " is still referenced", std::move(dependents));
    if (!blocking.empty())
      return error(K::WouldDangle, e.id + " still speaks dialogue lines", std::move(blocking));
    for (auto& shot : s_.shots) erase_value(shot.references_in_shot, e.id);
    for (auto& ev : s_.events) {
      if (ev.speaker == e.id) ev.speaker.reset();
    }
    std::erase_if(s_.references, [&](const ReferenceEntity& r) { return r.id == e.id; });
    return std::nullopt;
  }

  SetterResult operator()(const AddEvent& e) {
    s_.events.push_back(e.event);
    return std::nullopt;
  }

  SetterResult operator()(const RemoveEvent& e) {
    if (!s_.find_event(e.id)) return error(K::UnknownId, "no event " + e.id);
    std::vector<std::string> dependents;
    for (const auto& shot : s_.shots) {
      if (std::count(shot.active_events.begin(), shot.active_events.end(), e.id))
        dependents.push_back(join_path("shots", shot.id, "active_events"));
    }
    if (!e.cascade && !dependents.empty())
      return error(K::WouldDangle, e.id + " is still listed as active", std::move(dependents));
    for (auto& shot : s_.shots) erase_value(shot.active_events, e.id);
    std::erase_if(s_.events, [&](const AudioEvent& ev) { return ev.id == e.id; });
    return std::nullopt;
  }

  SetterResult operator()(const RebindSpeaker& e) {
    auto* ev = s_.find_event(e.event_id);
    if (!ev) return error(K::UnknownId, "no event " + e.event_id);
    if (!s_.find_reference(e.entity_id)) return error(K::UnknownId, "no entity " + e.entity_id);
    ev->speaker = e.entity_id;
    return std::nullopt;
  }

  SetterResult operator()(const RetimeShot& e) {
    auto* shot = s_.find_shot(e.shot_id);
    if (!shot) return error(K::UnknownId, "no shot " + e.shot_id);
    shot->time_range = e.range;
    if (e.relink && e.range.valid()) shot->active_events = inferred_for(s_, *shot);
    return std::nullopt;
  }

  SetterResult operator()(const SplitShot& e) {
    const auto* shot = s_.find_shot(e.shot_id);
    if (!shot) return error(K::UnknownId, "no shot " + e.shot_id);
    const auto range = shot->time_range;
    if (!(range.start < e.at && e.at < range.end))
      return error(K::CutOutsideRange, "cut at " + format_seconds(e.at) + " is not strictly inside " + e.shot_id);

    std::uint64_t next = 0;
    for (const auto& s : s_.shots) next = std::max(next, id_number(s.id));
    Shot first = *shot;
    Shot second = *shot;
    first.id = make_id(IdKind::Shot, next + 1);
    second.id = make_id(IdKind::Shot, next + 2);
    first.time_range = {range.start, e.at};
    second.time_range = {e.at, range.end};
    first.visual_description = filter_inline_markers(shot->visual_description, [&](Millis t) { return t < e.at; });
    second.visual_description = filter_inline_markers(shot->visual_description, [&](Millis t) { return t >= e.at; });

    const std::string old_id = e.shot_id;
    std::erase_if(s_.shots, [&](const Shot& s) { return s.id == old_id; });
    s_.shots.push_back(std::move(first));
    s_.shots.push_back(std::move(second));
    const TimelineIndex index(s_);
    for (auto& s : s_.shots) {
      if (s.id == make_id(IdKind::Shot, next + 1) || s.id == make_id(IdKind::Shot, next + 2))
        s.active_events = index.events_overlapping(s.time_range);
    }
    return std::nullopt;
  }

  SetterResult operator()(const MergeShots& e) {
    const auto* a = s_.find_shot(e.first_id);
    const auto* b = s_.find_shot(e.second_id);
    if (!a) return error(K::UnknownId, "no shot " + e.first_id);
    if (!b) return error(K::UnknownId, "no shot " + e.second_id);
    const Script ordered = canonicalize(s_);
    std::size_t ia = 0;
    while (ia < ordered.shots.size() && ordered.shots[ia].id != e.first_id) ++ia;
    if (ia + 1 >= ordered.shots.size() || ordered.shots[ia + 1].id != e.second_id)
      return error(K::NotAdjacent, e.first_id + " is not immediately followed by " + e.second_id);
    const Millis gap = b->time_range.start - a->time_range.end;
    if (gap > kEpsilon)
      return error(K::NotAdjacent, format_seconds(gap) + " s gap between " + e.first_id + " and " + e.second_id);

    Shot merged = *a;
    merged.time_range = {a->time_range.start, std::max(a->time_range.end, b->time_range.end)};
    merged.visual_description = a->visual_description + " " + b->visual_description;
    std::set<std::string> refs(a->references_in_shot.begin(), a->references_in_shot.end());
    refs.insert(b->references_in_shot.begin(), b->references_in_shot.end());
    merged.references_in_shot.assign(refs.begin(), refs.end());
    std::sort(merged.references_in_shot.begin(), merged.references_in_shot.end(),
              [](const std::string& x, const std::string& y) { return id_less(x, y); });

    const std::string second_id = e.second_id;
    *s_.find_shot(e.first_id) = std::move(merged);
    std::erase_if(s_.shots, [&](const Shot& s) { return s.id == second_id; });
    auto* result = s_.find_shot(e.first_id);
    result->active_events = inferred_for(s_, *result);
    return std::nullopt;
  }

 private:
  Script& s_;
};

}  // namespace

Result<EditOutcome, EditError> apply(const Script& script, const Edit& edit) {
  Script next = script;
  if (auto err = std::visit(Applier(next), edit)) return fail(std::move(*err));

  const auto problems = check_structure(next);
  if (!problems.empty()) {
    EditError err{K::StructureViolation, {}, {}};
    for (const auto& p : problems) {
      if (!err.message.empty()) err.message += "; ";
      err.message += std::string(kind_name(p.kind)) + " at " + p.path() + ": " + p.message;
      err.paths.push_back(p.path());
    }
    return fail(std::move(err));
  }
  next = canonicalize(std::move(next));
  auto footprint = compute_footprint(script, next);
  return EditOutcome{std::move(next), std::move(footprint)};
}

Result<EditOutcome, EditError> split_shot(const Script& script, std::string_view shot_id, Millis at) {
  return apply(script, SplitShot{std::string(shot_id), at});
}

Result<EditOutcome, EditError> merge_shots(const Script& script, std::string_view first_id,
                                           std::string_view second_id) {
  return apply(script, MergeShots{std::string(first_id), std::string(second_id)});
}

namespace {

using detail::diag;
using detail::ObjectReader;

bool read_bool(ObjectReader& rd, std::string_view key, bool fallback) {
  const Value* v = rd.get(key, false);
  if (!v) return fallback;
  if (!v->is_bool()) {
    rd.wrong_type(*v, key, "a boolean");
    return fallback;
  }
  return v->as_bool();
}

std::optional<Edit> decode_edit(const Value& v, std::vector<ParseDiagnostic>& diags) {
  if (!v.is_object()) {
    diags.push_back(diag(parse_codes::kWrongType, "edit record must be an object", v.span()));
    return std::nullopt;
  }
  const Value* op_value = v.find("op");
  if (!op_value || !op_value->is_string()) {
    diags.push_back(diag(op_value ? parse_codes::kWrongType : parse_codes::kSchema,
                         "edit record needs an \"op\" string", op_value ? op_value->span() : v.span()));
    return std::nullopt;
  }
  const std::string& op = op_value->text();
  const std::size_t before = diags.size();
  std::optional<Edit> out;

  if (op == "set_field") {
    ObjectReader rd(v, "set_field", {"op", "path", "value"}, diags);
    auto path = rd.string("path", true);
    const Value* value = rd.get("value", true);
    if (path && value) out = SetField{*path, *value};
  } else if (op == "add_entity") {
    ObjectReader rd(v, "add_entity", {"op", "entity"}, diags);
    if (const Value* e = rd.get("entity", true)) out = AddEntity{decode_reference(*e, diags)};
  } else if (op == "remove_entity") {
    ObjectReader rd(v, "remove_entity", {"op", "id", "cascade"}, diags);
    auto id = rd.string("id", true);
    const bool cascade = read_bool(rd, "cascade", false);
    if (id) out = RemoveEntity{*id, cascade};
  } else if (op == "add_event") {
    ObjectReader rd(v, "add_event", {"op", "event"}, diags);
    if (const Value* e = rd.get("event", true)) out = AddEvent{decode_event(*e, diags)};
  } else if (op == "remove_event") {
    ObjectReader rd(v, "remove_event", {"op", "id", "cascade"}, diags);
    auto id = rd.string("id", true);
    const bool cascade = read_bool(rd, "cascade", false);
    if (id) out = RemoveEvent{*id, cascade};
  } else if (op == "rebind_speaker") {
    ObjectReader rd(v, "rebind_speaker", {"op", "event", "entity"}, diags);
    auto ev = rd.string("event", true);
    auto ent = rd.string("entity", true);
    if (ev && ent) out = RebindSpeaker{*ev, *ent};
  } else if (op == "retime_shot") {
    ObjectReader rd(v, "retime_shot", {"op", "shot", "time_range", "relink"}, diags);
    auto shot = rd.string("shot", true);
    auto range = rd.range("time_range", true);
    const bool relink = read_bool(rd, "relink", true);
    if (shot && range) out = RetimeShot{*shot, *range, relink};
  } else if (op == "split_shot") {
    ObjectReader rd(v, "split_shot", {"op", "shot", "at"}, diags);
    auto shot = rd.string("shot", true);
    auto at = rd.time("at", true);
    if (shot && at) out = SplitShot{*shot, *at};
  } else if (op == "merge_shots") {
    ObjectReader rd(v, "merge_shots", {"op", "first", "second"}, diags);
    auto first = rd.string("first", true);
    auto second = rd.string("second", true);
    if (first && second) out = MergeShots{*first, *second};
  } else {
    diags.push_back(diag(parse_codes::kWrongType, "unknown edit op \"" + op + "\"", op_value->span()));
  }
  if (diags.size() != before) return std::nullopt;
  return out;
}

SourceSpan shift(SourceSpan span, std::size_t line_offset, std::size_t byte_offset) {
  span.line += line_offset;
  span.byte_offset_start += byte_offset;
  span.byte_offset_end += byte_offset;
  return span;
}

}  // namespace

Result<std::vector<Edit>, std::vector<ParseDiagnostic>> parse_edit_script(std::string_view text) {
  std::vector<Edit> edits;
  std::vector<ParseDiagnostic> diags;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const auto line = text.substr(pos, end - pos);
    const std::size_t line_begin = pos;
    pos = end + 1;
    ++line_no;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    auto value = parse_value(line);
    if (!value) {
      diags.push_back(value.error());
      diags.back().span = shift(diags.back().span, line_no - 1, line_begin);
      continue;
    }
    std::vector<ParseDiagnostic> local;
    auto edit = decode_edit(*value, local);
    for (auto& d : local) {
      d.span = shift(d.span, line_no - 1, line_begin);
      diags.push_back(std::move(d));
    }
    if (edit && local.empty()) edits.push_back(std::move(*edit));
  }
  if (!diags.empty()) return fail(std::move(diags));
  return edits;
}

Value to_value(const Edit& edit) {
  auto obj = Value::object();
  obj.set("op", Value::string(std::string(edit_name(edit))));
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, SetField>) {
          obj.set("path", Value::string(e.path));
          obj.set("value", e.value);
        } else if constexpr (std::is_same_v<T, AddEntity>) {
          obj.set("entity", to_value(e.entity));
        } else if constexpr (std::is_same_v<T, RemoveEntity> || std::is_same_v<T, RemoveEvent>) {
          obj.set("id", Value::string(e.id));
          obj.set("cascade", Value::boolean(e.cascade));
        } else if constexpr (std::is_same_v<T, AddEvent>) {
          obj.set("event", to_value(e.event));
        } else if constexpr (std::is_same_v<T, RebindSpeaker>) {
          obj.set("event", Value::string(e.event_id));
          obj.set("entity", Value::string(e.entity_id));
        } else if constexpr (std::is_same_v<T, RetimeShot>) {
          obj.set("shot", Value::string(e.shot_id));
          obj.set("time_range", to_value(e.range));
          obj.set("relink", Value::boolean(e.relink));
        } else if constexpr (std::is_same_v<T, SplitShot>) {
          obj.set("shot", Value::string(e.shot_id));
          obj.set("at", Value::seconds(e.at));
        } else if constexpr (std::is_same_v<T, MergeShots>) {
          obj.set("first", Value::string(e.first_id));
          obj.set("second", Value::string(e.second_id));
        }
      },
      edit);
  return obj;
}

Value to_value(const Diagnostic& d) {
  auto obj = Value::object();
  obj.set("code", Value::string(d.code));
  obj.set("severity", Value::string(std::string(severity_name(d.severity))));
  obj.set("subject", Value::string(d.subject));
  obj.set("message", Value::string(d.message));
  auto related = Value::array();
  for (const auto& r : d.related) related.push(Value::string(r));
  obj.set("related", std::move(related));
  return obj;
}

Value to_value(const Footprint& fp) {
  auto obj = Value::object();
  auto paths = Value::array();
  for (const auto& p : fp.changed_paths) paths.push(Value::string(p));
  obj.set("changed_paths", std::move(paths));
  auto rules = Value::array();
  for (const auto& r : fp.revalidated) rules.push(Value::string(r));
  obj.set("revalidated", std::move(rules));
  auto diags = Value::array();
  for (const auto& d : fp.new_diagnostics.items) diags.push(to_value(d));
  obj.set("new_diagnostics", std::move(diags));
  return obj;
}

}  // namespace mtss
