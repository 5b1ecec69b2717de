#include "mtss/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mtss/edits.hpp"
#include "mtss/render.hpp"
#include "mtss/validator.hpp"

namespace mtss {

std::size_t positional_difference(std::string_view a, std::string_view b) {
  const std::size_t common = std::min(a.size(), b.size());
  std::size_t diff = std::max(a.size(), b.size()) - common;
  for (std::size_t i = 0; i < common; ++i) diff += a[i] != b[i];
  return diff;
}

std::string probe_rewrite(std::string_view description) { return "Meanwhile, " + std::string(description); }

FootprintStats footprint_probe(const Script& input) {
  FootprintStats out;
  const Script script = canonicalize(input);
  auto base = render_monolithic(script, true);
  if (!base) return out;
  for (const auto& shot : script.shots) {
    const SetField edit{join_path("shots", shot.id, "visual_description"),
                        Value::string(probe_rewrite(shot.visual_description))};
    auto result = apply(script, edit);
    if (!result) continue;
    auto text = render_monolithic(result->script, true);
    if (!text) continue;
    ++out.probes;
    out.changed_paths += result->footprint.changed_paths.size();
    out.changed_positions += positional_difference(*base, *text);
  }
  if (out.changed_positions > 0)
    out.ratio = static_cast<double>(out.changed_paths) / static_cast<double>(out.changed_positions);
  return out;
}

ScriptStats compute_stats(const Script& script) {
  ScriptStats s;
  for (const auto& r : script.references) {
    switch (r.category) {
      case Category::Person: ++s.persons; break;
      case Category::Object: ++s.objects; break;
      case Category::Animal: ++s.animals; break;
      case Category::Scene: ++s.scenes; break;
    }
  }
  s.shots = script.shots.size();
  for (const auto& e : script.events) {
    switch (e.type) {
      case EventType::Dialogue: ++s.dialogue; break;
      case EventType::Sfx: ++s.sfx; break;
      case EventType::Music: ++s.music; break;
    }
  }
  s.duration = script.meta.duration;
  for (const auto& shot : script.shots) s.shot_coverage += shot.time_range.length();
  const auto diags = validate(script);
  s.lint_errors = diags.error_count;
  s.lint_warnings = diags.warning_count;
  if (diags.error_count == 0) {
    RedundancyStats r;
    r.bare_length = render_monolithic(script, MentionExpansion::None)->size();
    r.first_mention_length = render_monolithic(script, MentionExpansion::First)->size();
    r.every_mention_length = render_monolithic(script, MentionExpansion::Every)->size();
    s.redundancy = r;
    s.footprint = footprint_probe(script);
  }
  return s;
}

std::string format_stats(const ScriptStats& s) {
  std::ostringstream os;
  os << "references\t" << (s.persons + s.objects + s.animals + s.scenes) << "\t(person " << s.persons << ", object "
     << s.objects << ", animal " << s.animals << ", scene " << s.scenes << ")\n";
  os << "shots\t" << s.shots << "\n";
  os << "events\t" << (s.dialogue + s.sfx + s.music) << "\t(dialogue " << s.dialogue << ", sfx " << s.sfx
     << ", music " << s.music << ")\n";
  os << "duration_s\t" << format_seconds(s.duration) << "\n";
  os << "shot_coverage_s\t" << format_seconds(s.shot_coverage) << "\n";
  os << "lint\t" << s.lint_errors << " errors, " << s.lint_warnings << " warnings\n";
  if (s.redundancy) {
    const auto& r = *s.redundancy;
    os << "monolithic_chars\tbare " << r.bare_length << ", first_mention " << r.first_mention_length
       << ", every_mention " << r.every_mention_length << "\n";
    os << "redundancy_saved_chars\t" << (r.every_mention_length - r.first_mention_length) << "\n";
  }
  if (s.footprint) {
    const auto& f = *s.footprint;
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.6f", f.ratio);
    os << "footprint_probes\t" << f.probes << "\n";
    os << "footprint_paths\t" << f.changed_paths << "\n";
    os << "footprint_text_positions\t" << f.changed_positions << "\n";
    os << "footprint_ratio\t" << ratio << "\n";
  }
  return os.str();
}

}  // namespace mtss
