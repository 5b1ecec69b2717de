#include "mtss/validator.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>

#include "mtss/inline_timestamps.hpp"
#include "mtss/timeline.hpp"

namespace mtss {

std::string_view severity_name(Severity s) { return s == Severity::Error ? "error" : "warning"; }

namespace {

constexpr std::array<RuleInfo, 13> kCatalog{{
    {"E001", Severity::Error, "dangling shot reference",
     "A shot lists an entity id in references_in_shot that is not defined in the reference bank.",
     "shots/*/references_in_shot -> references/*/id"},
    {"E002", Severity::Error, "dangling speaker",
     "An event's speaker (or sfx source) names an entity id that is not defined in the reference bank.",
     "events/*/speaker -> references/*/id"},
    {"E003", Severity::Error, "dangling active event",
     "A shot lists an event id in active_events that is not defined in the event stream.",
     "shots/*/active_events -> events/*/id"},
    {"E004", Severity::Error, "overlapping shots",
     "Two shots share more than 1 ms of time; the shot stream must be a sequence of disjoint segments.",
     "shots/*/time_range <-> shots/*/time_range"},
    {"E005", Severity::Error, "inline timestamp outside shot",
     "A [t=...] marker inside a shot's visual_description lies outside that shot's time_range (1 ms tolerance).",
     "shots/*/visual_description markers -> shots/*/time_range"},
    {"E006", Severity::Error, "listed event not concurrent",
     "A shot lists an event in active_events whose time_range does not overlap the shot by more than 1 ms.",
     "shots/*/active_events -> events/*/time_range"},
    {"E007", Severity::Error, "time beyond duration",
     "A time_range end, reference timestamp or inline marker exceeds meta/duration (checked when duration > 0).",
     "meta/duration"},
    {"E008", Severity::Error, "event fields inconsistent with type",
     "Dialogue needs speaker and line; music carries neither; sfx carries no line.", "events/*/type"},
    {"W101", Severity::Warning, "unused entity",
     "An entity is never cited by any shot's references_in_shot or any event's speaker.",
     "references/*/id <- shots/*/references_in_shot, events/*/speaker"},
    {"W102", Severity::Warning, "unlisted concurrent event",
     "An event overlaps a shot by more than 1 ms but is missing from that shot's active_events.",
     "events/*/time_range -> shots/*/active_events"},
    {"W103", Severity::Warning, "speaker not in shot",
     "The speaker of a dialogue event overlapping a shot is not listed in that shot's references_in_shot "
     "(legitimate for off-screen speech).",
     "events/*/speaker -> shots/*/references_in_shot"},
    {"W104", Severity::Warning, "gap between shots",
     "Consecutive shots leave more than 1 ms of the timeline uncovered.", "shots/*/time_range"},
    {"W105", Severity::Warning, "unbound sound effect",
     "An sfx event has no speaker binding naming the entity that produces it.", "events/*/speaker"},
}};

const RuleInfo& rule(std::string_view code) {
  for (const auto& r : kCatalog) {
    if (r.code == code) return r;
  }
  return kCatalog.front();
}

class Linter {
 public:
  explicit Linter(const Script& s) : s_(s) {
    for (const auto& r : s.references) entities_.insert(r.id);
    for (const auto& e : s.events) events_.insert(e.id);
  }

  DiagnosticSet run() {
    links();
    shot_order();
    inline_markers();
    concurrency();
    duration();
    event_types();
    unused_entities();
    out_.normalize();
    return std::move(out_);
  }

 private:
  void add(std::string_view code, std::string subject, std::string message, std::vector<std::string> related = {}) {
    const auto& r = rule(code);
    out_.items.push_back({std::string(r.code), r.severity, std::move(subject), std::move(message), std::move(related)});
  }

  void links() {
    for (const auto& shot : s_.shots) {
      for (const auto& id : shot.references_in_shot) {
        if (!entities_.count(id))
          add("E001", join_path("shots", shot.id, "references_in_shot"),
              id + " is not defined in the reference bank", {id});
      }
      for (const auto& id : shot.active_events) {
        if (!events_.count(id))
          add("E003", join_path("shots", shot.id, "active_events"), id + " is not defined in the event stream", {id});
      }
    }
    for (const auto& ev : s_.events) {
      if (ev.speaker && !entities_.count(*ev.speaker))
        add("E002", join_path("events", ev.id, "speaker"), *ev.speaker + " is not defined in the reference bank",
            {*ev.speaker});
    }
  }

  std::vector<const Shot*> sorted_shots() const {
    std::vector<const Shot*> shots;
    for (const auto& shot : s_.shots) shots.push_back(&shot);
    std::stable_sort(shots.begin(), shots.end(), [](const Shot* a, const Shot* b) {
      if (a->time_range.start != b->time_range.start) return a->time_range.start < b->time_range.start;
      return id_less(a->id, b->id);
    });
    return shots;
  }

  void shot_order() {
    const auto shots = sorted_shots();
    for (std::size_t i = 0; i < shots.size(); ++i) {
      for (std::size_t j = i + 1; j < shots.size(); ++j) {
        if (shots[j]->time_range.start >= shots[i]->time_range.end) break;
        if (overlaps(shots[i]->time_range, shots[j]->time_range))
          add("E004", join_path("shots", shots[j]->id, "time_range"),
              shots[j]->id + " overlaps " + shots[i]->id + " by " +
                  format_seconds(overlap(shots[i]->time_range, shots[j]->time_range).length) + " s",
              {shots[i]->id});
      }
    }
    for (std::size_t i = 0; i + 1 < shots.size(); ++i) {
      const Millis gap = shots[i + 1]->time_range.start - shots[i]->time_range.end;
      if (gap > kEpsilon)
        add("W104", join_path("shots", shots[i + 1]->id, "time_range"),
            format_seconds(gap) + " s gap after " + shots[i]->id, {shots[i]->id});
    }
  }

  void inline_markers() {
    for (const auto& shot : s_.shots) {
      auto extracted = extract_inline_timestamps(shot.visual_description);
      if (!extracted) continue;  // structural, reported by the parser
      for (const auto& ts : extracted->timestamps) {
        if (ts.time < shot.time_range.start - kEpsilon || ts.time > shot.time_range.end + kEpsilon)
          add("E005", join_path("shots", shot.id, "visual_description"),
              "marker " + ts.marker + " lies outside [" + format_seconds(shot.time_range.start) + ", " +
                  format_seconds(shot.time_range.end) + ")");
      }
    }
  }

  void concurrency() {
    for (const auto& shot : s_.shots) {
      const std::set<std::string> listed(shot.active_events.begin(), shot.active_events.end());
      const std::set<std::string> cast(shot.references_in_shot.begin(), shot.references_in_shot.end());
      for (const auto& id : shot.active_events) {
        const auto* ev = s_.find_event(id);
        if (ev && !overlaps(shot.time_range, ev->time_range))
          add("E006", join_path("shots", shot.id, "active_events"),
              id + " does not overlap " + shot.id + " in time", {id});
      }
      for (const auto& ev : s_.events) {
        if (!overlaps(shot.time_range, ev.time_range)) continue;
        if (!listed.count(ev.id))
          add("W102", join_path("shots", shot.id, "active_events"),
              ev.id + " overlaps " + shot.id + " but is not listed", {ev.id});
        if (ev.type == EventType::Dialogue && ev.speaker && !cast.count(*ev.speaker))
          add("W103", join_path("shots", shot.id, "references_in_shot"),
              "speaker " + *ev.speaker + " of " + ev.id + " is not in " + shot.id, {*ev.speaker, ev.id});
      }
    }
  }

  void duration() {
    const Millis limit = s_.meta.duration;
    if (limit.count <= 0) return;
    const auto beyond = [&](Millis t) { return t > limit + kEpsilon; };
    const auto msg = [&](Millis t) {
      return format_seconds(t) + " s exceeds duration " + format_seconds(limit) + " s";
    };
    for (const auto& r : s_.references) {
      if (beyond(r.timestamp)) add("E007", join_path("references", r.id, "timestamp"), msg(r.timestamp));
    }
    for (const auto& shot : s_.shots) {
      if (beyond(shot.time_range.end))
        add("E007", join_path("shots", shot.id, "time_range"), msg(shot.time_range.end));
      if (auto extracted = extract_inline_timestamps(shot.visual_description)) {
        for (const auto& ts : extracted->timestamps) {
          if (beyond(ts.time)) add("E007", join_path("shots", shot.id, "visual_description"), msg(ts.time));
        }
      }
    }
    for (const auto& ev : s_.events) {
      if (beyond(ev.time_range.end)) add("E007", join_path("events", ev.id, "time_range"), msg(ev.time_range.end));
    }
  }

  void event_types() {
    for (const auto& ev : s_.events) {
      switch (ev.type) {
        case EventType::Dialogue:
          if (!ev.speaker) add("E008", join_path("events", ev.id, "speaker"), "dialogue event has no speaker");
          if (!ev.line || ev.line->empty()) add("E008", join_path("events", ev.id, "line"), "dialogue event has no line");
          break;
        case EventType::Music:
          if (ev.speaker) add("E008", join_path("events", ev.id, "speaker"), "music event carries a speaker");
          if (ev.line) add("E008", join_path("events", ev.id, "line"), "music event carries a line");
          break;
        case EventType::Sfx:
          if (ev.line) add("E008", join_path("events", ev.id, "line"), "sfx event carries a line");
          if (!ev.speaker) add("W105", join_path("events", ev.id, "speaker"), "sfx event has no source entity");
          break;
      }
    }
  }

  void unused_entities() {
    std::set<std::string> cited;
    for (const auto& shot : s_.shots) cited.insert(shot.references_in_shot.begin(), shot.references_in_shot.end());
    for (const auto& ev : s_.events) {
      if (ev.speaker) cited.insert(*ev.speaker);
    }
    for (const auto& r : s_.references) {
      if (!cited.count(r.id))
        add("W101", join_path("references", r.id), r.id + " is never cited by a shot or event");
    }
  }

  const Script& s_;
  std::set<std::string> entities_;
  std::set<std::string> events_;
  DiagnosticSet out_;
};

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), '\t', ' ');
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

}  // namespace

std::span<const RuleInfo> rule_catalog() { return kCatalog; }

Result<RuleInfo, UnknownRuleCode> explain_rule(std::string_view code) {
  for (const auto& r : kCatalog) {
    if (r.code == code) return r;
  }
  return fail(UnknownRuleCode{std::string(code)});
}

bool DiagnosticSet::has_code(std::string_view code) const { return count(code) > 0; }

std::size_t DiagnosticSet::count(std::string_view code) const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [&](const Diagnostic& d) { return d.code == code; }));
}

void DiagnosticSet::normalize() {
  std::sort(items.begin(), items.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.subject, a.code, a.message, a.related) < std::tie(b.subject, b.code, b.message, b.related);
  });
  error_count = static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; }));
  warning_count = items.size() - error_count;
}

DiagnosticSet validate(const Script& script) { return Linter(script).run(); }

DiagnosticSet promote_warnings(DiagnosticSet set) {
  for (auto& d : set.items) d.severity = Severity::Error;
  set.normalize();
  return set;
}

DiagnosticSet diagnostics_delta(const DiagnosticSet& before, const DiagnosticSet& after) {
  DiagnosticSet out;
  for (const auto& d : after.items) {
    if (std::find(before.items.begin(), before.items.end(), d) == before.items.end()) out.items.push_back(d);
  }
  out.normalize();
  return out;
}

std::string format_diagnostic_line(const Diagnostic& d) {
  return d.code + "\t" + std::string(severity_name(d.severity)) + "\t" + sanitize(d.subject) + "\t" +
         sanitize(d.message);
}

std::string format_diagnostic_text(const Diagnostic& d) {
  return sanitize(d.subject) + ": " + std::string(severity_name(d.severity)) + "[" + d.code + "]: " +
         sanitize(d.message);
}

}  // namespace mtss
