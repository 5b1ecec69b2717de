#include "mtss/render.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "mtss/inline_timestamps.hpp"
#include "mtss/parser.hpp"
#include "mtss/timeline.hpp"

namespace mtss {

namespace {

constexpr std::size_t kNameWords = 6;

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string terminate(std::string s) {
  if (s.empty()) return s;
  const char last = s.back();
  if (last != '.' && last != '!' && last != '?' && last != '"' && last != '\'' && last != ')') s.push_back('.');
  return s;
}

// Collapses whitespace runs left behind by stripped markers.
std::string squeeze_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(c);
  }
  return out;
}

// "The kitchen" reads as "the kitchen" mid-sentence.
std::string lower_article(std::string name) {
  for (const std::string_view article : {"A ", "An ", "The "}) {
    if (name.size() > article.size() && name.compare(0, article.size(), article) == 0) {
      name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
      break;
    }
  }
  return name;
}

std::string anchor_text(const AppearanceAnchor& a, bool full) {
  std::string out = a.detail_description;
  if (!full) return out;
  const std::pair<const std::optional<std::string>*, const char*> extras[] = {
      {&a.clothing, "clothing"}, {&a.accessories, "accessories"}, {&a.hairstyle, "hairstyle"}};
  for (const auto& [value, label] : extras) {
    if (value->has_value() && !(*value)->empty()) out += std::string("; ") + label + ": " + **value;
  }
  return out;
}

// Replaces entity ids in free text with display names, expanding appearance
// details according to the mode. Tracks first mentions across calls.
class MentionRenderer {
 public:
  MentionRenderer(const Script& s, MentionExpansion mode, bool full_anchor)
      : mode_(mode), full_anchor_(full_anchor) {
    for (const auto& r : s.references) bank_.emplace(r.id, &r);
  }

  std::string mention(const std::string& id, bool sentence_start = true) {
    auto it = bank_.find(id);
    if (it == bank_.end()) return id;
    std::string out = display_name(*it->second);
    if (!sentence_start) out = lower_article(std::move(out));
    const bool first = seen_.insert(id).second;
    if (mode_ == MentionExpansion::Every || (mode_ == MentionExpansion::First && first))
      out += " (" + anchor_text(it->second->appearance_anchor, full_anchor_) + ")";
    return out;
  }

  std::string text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
      if ((i == 0 || !word_char(s[i - 1])) && std::isupper(static_cast<unsigned char>(s[i]))) {
        std::size_t j = i;
        while (j < s.size() && word_char(s[j])) ++j;
        const std::string token(s.substr(i, j - i));
        if (is_entity_id(token) && bank_.count(token)) {
          const auto last = out.find_last_not_of(" \t\r\n");
          const bool start = last == std::string::npos || std::string_view(".!?").find(out[last]) != std::string_view::npos;
          out += mention(token, start);
          i = j;
          continue;
        }
        out.append(s.substr(i, j - i));
        i = j;
        continue;
      }
      out.push_back(s[i++]);
    }
    return out;
  }

  bool seen(const std::string& id) const { return seen_.count(id) > 0; }

 private:
  MentionExpansion mode_;
  bool full_anchor_;
  std::map<std::string, const ReferenceEntity*> bank_;
  std::set<std::string> seen_;
};

struct Sentence {
  std::string text;
  Millis anchor;
};

// Splits a stripped description into sentences; each sentence is anchored at
// the latest marker that precedes its end, or at the shot start.
std::vector<Sentence> sentences(const Shot& shot) {
  auto extracted = extract_inline_timestamps(shot.visual_description);
  std::string stripped = extracted ? extracted->stripped_text : shot.visual_description;
  std::vector<std::pair<std::size_t, Millis>> markers;
  if (extracted) {
    std::size_t removed = 0;
    for (const auto& ts : extracted->timestamps) {
      markers.emplace_back(ts.text_offset - removed, ts.time);
      removed += ts.marker.size();
    }
  }
  std::vector<Sentence> out;
  std::size_t begin = 0;
  const auto flush = [&](std::size_t end) {
    auto text = trim(std::string_view(stripped).substr(begin, end - begin));
    if (!text.empty()) {
      Millis anchor = shot.time_range.start;
      for (const auto& [offset, time] : markers) {
        if (offset < end) anchor = time;
      }
      out.push_back({std::move(text), anchor});
    }
    begin = end;
  };
  for (std::size_t i = 0; i < stripped.size(); ++i) {
    const char c = stripped[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < stripped.size() && (stripped[end] == '"' || stripped[end] == '\'' || stripped[end] == ')')) ++end;
    if (end == stripped.size() || std::isspace(static_cast<unsigned char>(stripped[end]))) {
      flush(end);
      i = end - 1;
    }
  }
  flush(stripped.size());
  return out;
}

std::string event_text(const AudioEvent& ev, MentionRenderer& mentions) {
  const std::string desc = trim(mentions.text(ev.description));
  switch (ev.type) {
    case EventType::Dialogue: {
      std::string out = (ev.speaker ? mentions.mention(*ev.speaker) : std::string("Someone")) + " says: \"" +
                        ev.line.value_or("") + "\"";
      if (!desc.empty()) out += " (" + desc + ")";
      return out;
    }
    case EventType::Sfx: {
      std::string out = ev.speaker ? "Sound from " + mentions.mention(*ev.speaker, false) + ": " : std::string("Sound: ");
      return terminate(out + desc);
    }
    case EventType::Music: return terminate("Music: " + desc);
  }
  return {};
}

std::optional<ValidationErrorsPresent> check_renderable(const Script& script) {
  auto diags = validate(script);
  if (diags.error_count > 0) return ValidationErrorsPresent{std::move(diags)};
  return std::nullopt;
}

// Index of the shot an event is narrated in: the shot containing its start,
// else the last shot starting before it, else the first shot.
std::size_t home_shot(const std::vector<Shot>& shots, const AudioEvent& ev) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (shots[i].time_range.contains(ev.time_range.start)) return i;
    if (shots[i].time_range.start <= ev.time_range.start) best = i;
  }
  return best;
}

}  // namespace

std::string display_name(const ReferenceEntity& entity) {
  const auto& desc = entity.semantic_description;
  const auto stop = desc.find_first_of(",;.:(");
  std::istringstream words(desc.substr(0, stop));
  std::string word;
  std::string out;
  for (std::size_t n = 0; n < kNameWords && words >> word; ++n) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out.empty() ? entity.id : out;
}

Result<std::string, ValidationErrorsPresent> render_monolithic(const Script& script, bool expand_first_mention) {
  return render_monolithic(script, expand_first_mention ? MentionExpansion::First : MentionExpansion::None);
}

Result<std::string, ValidationErrorsPresent> render_monolithic(const Script& input, MentionExpansion mode) {
  if (auto err = check_renderable(input)) return fail(std::move(*err));
  const Script script = canonicalize(input);
  MentionRenderer mentions(script, mode, false);
  std::vector<std::string> pieces;

  pieces.push_back(terminate(trim(mentions.text(script.global.scene_description))));

  std::vector<std::vector<const AudioEvent*>> per_shot(script.shots.size());
  std::vector<const AudioEvent*> orphans;
  for (const auto& ev : script.events) {
    if (script.shots.empty()) orphans.push_back(&ev);
    else per_shot[home_shot(script.shots, ev)].push_back(&ev);
  }

  for (std::size_t si = 0; si < script.shots.size(); ++si) {
    const auto parts = sentences(script.shots[si]);
    // slot k holds events placed after sentence k-1 (slot 0: before any sentence)
    std::vector<std::vector<const AudioEvent*>> slots(parts.size() + 1);
    for (const auto* ev : per_shot[si]) {
      std::size_t slot = 0;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].anchor <= ev->time_range.start) slot = k + 1;
      }
      slots[slot].push_back(ev);
    }
    for (std::size_t k = 0; k <= parts.size(); ++k) {
      for (const auto* ev : slots[k]) pieces.push_back(event_text(*ev, mentions));
      if (k < parts.size()) pieces.push_back(mentions.text(parts[k].text));
    }
  }
  for (const auto* ev : orphans) pieces.push_back(event_text(*ev, mentions));

  if (!script.global.global_style.empty())
    pieces.push_back(terminate("Style: " + trim(mentions.text(script.global.global_style))));
  if (!script.global.global_audio.empty())
    pieces.push_back(terminate("Ambient audio: " + trim(mentions.text(script.global.global_audio))));

  std::string out;
  for (const auto& p : pieces) {
    if (p.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

Result<std::vector<ShotPrompt>, ValidationErrorsPresent> render_shot_prompts(const Script& input) {
  if (auto err = check_renderable(input)) return fail(std::move(*err));
  const Script script = canonicalize(input);
  const TimelineIndex index(script);
  std::vector<ShotPrompt> out;

  for (const auto& shot : script.shots) {
    MentionRenderer mentions(script, MentionExpansion::First, true);
    ShotPrompt prompt{shot.id, shot.time_range, {}, {}};
    std::vector<std::string> lines;

    auto extracted = extract_inline_timestamps(shot.visual_description);
    lines.push_back(trim(squeeze_spaces(mentions.text(extracted ? extracted->stripped_text : shot.visual_description))));

    std::vector<std::string> camera;
    for (const auto* part : {&shot.camera.movement, &shot.camera.perspective, &shot.camera.scale}) {
      if (part->has_value() && !(*part)->empty()) camera.push_back(**part);
    }
    std::string camera_line = "Camera:";
    for (std::size_t i = 0; i < camera.size(); ++i) camera_line += (i ? "; " : " ") + camera[i];
    lines.push_back(terminate(camera_line));

    std::vector<std::string> present;
    for (const auto& id : shot.references_in_shot) {
      if (!mentions.seen(id)) present.push_back(mentions.mention(id));
    }
    if (!present.empty()) {
      std::string line = "Also present: ";
      for (std::size_t i = 0; i < present.size(); ++i) line += (i ? ", " : "") + present[i];
      lines.push_back(terminate(line));
    }

    const auto inferred = index.events_overlapping(shot.time_range);
    std::vector<const AudioEvent*> events;
    for (const auto& id : shot.active_events) {
      if (const auto* ev = script.find_event(id)) events.push_back(ev);
    }
    std::sort(events.begin(), events.end(), [](const AudioEvent* a, const AudioEvent* b) {
      if (a->time_range.start != b->time_range.start) return a->time_range.start < b->time_range.start;
      return id_less(a->id, b->id);
    });
    for (const auto* ev : events) {
      lines.push_back("[" + format_seconds(ev->time_range.start) + "-" + format_seconds(ev->time_range.end) + "] " +
                      event_text(*ev, mentions));
    }

    const std::set<std::string> stored(shot.active_events.begin(), shot.active_events.end());
    const std::set<std::string> temporal(inferred.begin(), inferred.end());
    for (const auto& id : temporal) {
      if (!stored.count(id))
        prompt.warnings.push_back(id + " overlaps " + shot.id + " but is not in active_events; stored links used");
    }
    for (const auto& id : stored) {
      if (!temporal.count(id))
        prompt.warnings.push_back(id + " is listed in active_events of " + shot.id + " but does not overlap it");
    }

    for (const auto& line : lines) {
      if (line.empty()) continue;
      if (!prompt.prompt_text.empty()) prompt.prompt_text.push_back('\n');
      prompt.prompt_text += line;
    }
    out.push_back(std::move(prompt));
  }
  return out;
}

Value to_value(const ShotPrompt& p) {
  auto obj = Value::object();
  obj.set("shot", Value::string(p.shot_id));
  obj.set("time_range", to_value(p.time_range));
  obj.set("prompt_text", Value::string(p.prompt_text));
  auto warnings = Value::array();
  for (const auto& w : p.warnings) warnings.push(Value::string(w));
  obj.set("warnings", std::move(warnings));
  return obj;
}

Value to_value(const std::vector<ShotPrompt>& prompts) {
  auto arr = Value::array();
  for (const auto& p : prompts) arr.push(to_value(p));
  return arr;
}

}  // namespace mtss
