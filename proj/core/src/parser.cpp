#include "mtss/parser.hpp"

#include "object_reader.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <sstream>

namespace mtss {

using detail::diag;
using detail::ObjectReader;

namespace {

// Located view of the parsed tree used to attach spans to structure errors.
struct ElementIndex {
  const Value* meta = nullptr;
  const Value* global = nullptr;
  std::vector<const Value*> references;
  std::vector<const Value*> shots;
  std::vector<const Value*> events;
  SourceSpan root;
};

SourceSpan locate(const ElementIndex& idx, const StructureError& e) {
  const Value* node = nullptr;
  switch (e.stream) {
    case Stream::Meta: node = idx.meta; break;
    case Stream::Global: node = idx.global; break;
    case Stream::References: node = e.index && *e.index < idx.references.size() ? idx.references[*e.index] : nullptr; break;
    case Stream::Shots: node = e.index && *e.index < idx.shots.size() ? idx.shots[*e.index] : nullptr; break;
    case Stream::Events: node = e.index && *e.index < idx.events.size() ? idx.events[*e.index] : nullptr; break;
  }
  if (!node) return idx.root;
  std::string_view rest = e.field;
  while (!rest.empty() && node->is_object()) {
    const auto slash = rest.find('/');
    const auto key = rest.substr(0, slash);
    const Value* child = node->find(key);
    if (!child) break;
    node = child;
    rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
  }
  return node->span();
}

}  // namespace

std::optional<Millis> decode_time(const Value& v) {
  if (!v.is_number()) return std::nullopt;
  return parse_decimal_seconds(v.text());
}

std::optional<TimeRange> decode_time_range(const Value& v) {
  if (!v.is_array() || v.items().size() != 2) return std::nullopt;
  const auto start = decode_time(v.items()[0]);
  const auto end = decode_time(v.items()[1]);
  if (!start || !end) return std::nullopt;
  return TimeRange{*start, *end};
}

ReferenceEntity decode_reference(const Value& v, std::vector<ParseDiagnostic>& diags) {
  ReferenceEntity r;
  ObjectReader rd(v, "reference", {"id", "category", "semantic_description", "timestamp", "appearance_anchor"}, diags);
  if (!rd.valid()) return r;
  r.id = rd.string("id", true).value_or("");
  if (const Value* cat = rd.get("category", true)) {
    if (!cat->is_string()) {
      rd.wrong_type(*cat, "category", "a string");
    } else if (auto c = parse_category(cat->text())) {
      r.category = *c;
    } else {
      diags.push_back(diag(parse_codes::kWrongType,
                           "category \"" + cat->text() + "\" is not one of person, object, animal, scene", cat->span()));
    }
  }
  r.semantic_description = rd.string("semantic_description", true).value_or("");
  r.timestamp = rd.time("timestamp", true).value_or(Millis{});
  if (const Value* anchor = rd.get("appearance_anchor", true)) {
    ObjectReader ar(*anchor, "appearance_anchor", {"detail_description", "clothing", "accessories", "hairstyle"},
                    diags);
    if (ar.valid()) {
      r.appearance_anchor.detail_description = ar.string("detail_description", true).value_or("");
      r.appearance_anchor.clothing = ar.string("clothing", false);
      r.appearance_anchor.accessories = ar.string("accessories", false);
      r.appearance_anchor.hairstyle = ar.string("hairstyle", false);
    }
  }
  return r;
}

Shot decode_shot(const Value& v, std::vector<ParseDiagnostic>& diags) {
  Shot s;
  ObjectReader rd(v, "shot",
                  {"id", "time_range", "visual_description", "camera", "references_in_shot", "active_events"}, diags);
  if (!rd.valid()) return s;
  s.id = rd.string("id", true).value_or("");
  if (auto r = rd.range("time_range", true)) s.time_range = *r;
  s.visual_description = rd.string("visual_description", true).value_or("");
  if (const Value* cam = rd.get("camera", true)) {
    ObjectReader cr(*cam, "camera", {"movement", "perspective", "scale"}, diags);
    if (cr.valid()) {
      s.camera.movement = cr.string("movement", false);
      s.camera.perspective = cr.string("perspective", false);
      s.camera.scale = cr.string("scale", false);
    }
  }
  s.references_in_shot = rd.string_list("references_in_shot");
  s.active_events = rd.string_list("active_events");
  return s;
}

AudioEvent decode_event(const Value& v, std::vector<ParseDiagnostic>& diags) {
  AudioEvent e;
  ObjectReader rd(v, "event", {"id", "type", "time_range", "speaker", "line", "description"}, diags);
  if (!rd.valid()) return e;
  e.id = rd.string("id", true).value_or("");
  if (const Value* type = rd.get("type", true)) {
    if (!type->is_string()) {
      rd.wrong_type(*type, "type", "a string");
    } else if (auto t = parse_event_type(type->text())) {
      e.type = *t;
    } else {
      diags.push_back(
          diag(parse_codes::kWrongType, "event type \"" + type->text() + "\" is not one of dialogue, sfx, music",
               type->span()));
    }
  }
  if (auto r = rd.range("time_range", true)) e.time_range = *r;
  e.speaker = rd.string("speaker", false);
  e.line = rd.string("line", false);
  e.description = rd.string("description", false).value_or("");
  return e;
}

ParseResult parse_document(std::string_view text) {
  auto tree = parse_value(text);
  if (!tree) return fail(std::vector<ParseDiagnostic>{tree.error()});
  const Value& root = tree.value();

  std::vector<ParseDiagnostic> diags;
  Script script;
  ElementIndex idx;
  idx.root = root.span();

  ObjectReader rd(root, "document", {"meta", "global", "references", "shots", "events"}, diags);
  if (!rd.valid()) return fail(std::move(diags));

  if (const Value* meta = rd.get("meta", true)) {
    idx.meta = meta;
    ObjectReader mr(*meta, "meta", {"duration", "fps"}, diags);
    if (mr.valid()) {
      script.meta.duration = mr.time("duration", true).value_or(Millis{});
      if (const Value* fps = mr.get("fps", false)) {
        double value = 0.0;
        const auto& lex = fps->text();
        if (fps->is_number() &&
            std::from_chars(lex.data(), lex.data() + lex.size(), value).ec == std::errc{} && std::isfinite(value)) {
          script.meta.fps = value;
        } else {
          mr.wrong_type(*fps, "fps", "a finite number");
        }
      }
    }
  }
  if (const Value* global = rd.get("global", true)) {
    idx.global = global;
    ObjectReader gr(*global, "global", {"scene_description", "global_style", "global_audio"}, diags);
    if (gr.valid()) {
      script.global.scene_description = gr.string("scene_description", true).value_or("");
      script.global.global_style = gr.string("global_style", false).value_or("");
      script.global.global_audio = gr.string("global_audio", false).value_or("");
    }
  }

  const auto read_stream = [&](std::string_view key, auto&& decode, auto& out, std::vector<const Value*>& nodes) {
    const Value* arr = rd.get(key, false);
    if (!arr) return;
    if (!arr->is_array()) {
      rd.wrong_type(*arr, key, "an array");
      return;
    }
    for (const auto& item : arr->items()) {
      nodes.push_back(&item);
      out.push_back(decode(item, diags));
    }
  };
  read_stream("references", decode_reference, script.references, idx.references);
  read_stream("shots", decode_shot, script.shots, idx.shots);
  read_stream("events", decode_event, script.events, idx.events);

  // Schema invariants are only meaningful once every field decoded.
  if (diags.empty()) {
    for (const auto& e : check_structure(script)) {
      const auto code =
          e.kind == StructureError::Kind::BadInlineTimestamp ? parse_codes::kBadTimestamp : parse_codes::kSchema;
      diags.push_back(diag(code, std::string(kind_name(e.kind)) + " at " + e.path() + ": " + e.message, locate(idx, e)));
    }
  }
  if (!diags.empty()) return fail(std::move(diags));
  return script;
}

Value to_value(const TimeRange& range) {
  return Value::array({Value::seconds(range.start), Value::seconds(range.end)});
}

namespace {

Value string_list(const std::vector<std::string>& ids) {
  auto arr = Value::array();
  for (const auto& id : ids) arr.push(Value::string(id));
  return arr;
}

void set_optional(Value& obj, const char* key, const std::optional<std::string>& v) {
  if (v) obj.set(key, Value::string(*v));
}

}  // namespace

Value to_value(const ReferenceEntity& r) {
  auto obj = Value::object();
  obj.set("id", Value::string(r.id));
  obj.set("category", Value::string(std::string(category_name(r.category))));
  obj.set("semantic_description", Value::string(r.semantic_description));
  obj.set("timestamp", Value::seconds(r.timestamp));
  auto anchor = Value::object();
  anchor.set("detail_description", Value::string(r.appearance_anchor.detail_description));
  set_optional(anchor, "clothing", r.appearance_anchor.clothing);
  set_optional(anchor, "accessories", r.appearance_anchor.accessories);
  set_optional(anchor, "hairstyle", r.appearance_anchor.hairstyle);
  obj.set("appearance_anchor", std::move(anchor));
  return obj;
}

Value to_value(const Shot& s) {
  auto obj = Value::object();
  obj.set("id", Value::string(s.id));
  obj.set("time_range", to_value(s.time_range));
  obj.set("visual_description", Value::string(s.visual_description));
  auto cam = Value::object();
  set_optional(cam, "movement", s.camera.movement);
  set_optional(cam, "perspective", s.camera.perspective);
  set_optional(cam, "scale", s.camera.scale);
  obj.set("camera", std::move(cam));
  obj.set("references_in_shot", string_list(s.references_in_shot));
  obj.set("active_events", string_list(s.active_events));
  return obj;
}

Value to_value(const AudioEvent& e) {
  auto obj = Value::object();
  obj.set("id", Value::string(e.id));
  obj.set("type", Value::string(std::string(event_type_name(e.type))));
  obj.set("time_range", to_value(e.time_range));
  set_optional(obj, "speaker", e.speaker);
  set_optional(obj, "line", e.line);
  obj.set("description", Value::string(e.description));
  return obj;
}

Value to_value(const Script& script) {
  auto root = Value::object();
  auto meta = Value::object();
  meta.set("duration", Value::seconds(script.meta.duration));
  meta.set("fps", Value::number(script.meta.fps));
  root.set("meta", std::move(meta));
  auto global = Value::object();
  global.set("scene_description", Value::string(script.global.scene_description));
  global.set("global_style", Value::string(script.global.global_style));
  global.set("global_audio", Value::string(script.global.global_audio));
  root.set("global", std::move(global));
  auto& refs = root.set("references", Value::array());
  for (const auto& r : script.references) refs.push(to_value(r));
  auto& shots = root.set("shots", Value::array());
  for (const auto& s : script.shots) shots.push(to_value(s));
  auto& events = root.set("events", Value::array());
  for (const auto& e : script.events) events.push(to_value(e));
  return root;
}

std::string serialize(const Script& script) { return print_value(to_value(canonicalize(script))) + "\n"; }

std::string format_diagnostic(const ParseDiagnostic& d, std::string_view source_name) {
  std::ostringstream os;
  if (!source_name.empty()) os << source_name << ':';
  os << d.span.line << ':' << d.span.column << ": " << d.code << ": " << d.message;
  return os.str();
}

}  // namespace mtss
