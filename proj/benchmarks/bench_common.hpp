#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mtss/schema.hpp"

namespace mtss::bench {

// A tiled script with n shots, n events and n/4 entities, every link consistent.
inline Script synthetic_script(std::size_t n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  Script s;
  const std::int64_t shot_ms = 2000;
  s.meta = {from_ms(static_cast<std::int64_t>(n) * shot_ms), 25.0};
  s.global.scene_description = "A crowded station concourse at dusk.";
  const std::size_t people = std::max<std::size_t>(1, n / 4);
  for (std::size_t i = 1; i <= people; ++i) {
    ReferenceEntity r;
    r.id = "PERSON_" + std::to_string(i);
    r.category = Category::Person;
    r.semantic_description = "Traveller number " + std::to_string(i) + ", carrying a bag";
    r.appearance_anchor.detail_description = "Grey coat, brown boots";
    s.references.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Shot shot;
    shot.id = "SHOT_" + std::to_string(i + 1);
    shot.time_range = {from_ms(static_cast<std::int64_t>(i) * shot_ms), from_ms(static_cast<std::int64_t>(i + 1) * shot_ms)};
    shot.visual_description = "PERSON_" + std::to_string(1 + i % people) + " crosses the hall.";
    shot.camera.scale = "medium";
    shot.references_in_shot = {"PERSON_" + std::to_string(1 + i % people)};
    s.shots.push_back(std::move(shot));
  }
  std::uniform_int_distribution<std::int64_t> start(0, static_cast<std::int64_t>(n) * shot_ms - 600);
  for (std::size_t i = 0; i < n; ++i) {
    AudioEvent e;
    e.id = "EVENT_" + std::to_string(i + 1);
    e.type = EventType::Music;
    const auto t = start(rng);
    e.time_range = {from_ms(t), from_ms(t + 500)};
    e.description = "A short chime.";
    s.events.push_back(std::move(e));
  }
  for (auto& shot : s.shots) {
    for (const auto& e : s.events) {
      const auto lo = std::max(shot.time_range.start, e.time_range.start);
      const auto hi = std::min(shot.time_range.end, e.time_range.end);
      if ((hi - lo) > kEpsilon) shot.active_events.push_back(e.id);
    }
  }
  return canonicalize(s);
}

}  // namespace mtss::bench
