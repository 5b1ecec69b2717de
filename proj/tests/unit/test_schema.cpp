#include <algorithm>

#include "doctest.h"
#include "mtss/parser.hpp"
#include "mtss/schema.hpp"
#include "test_support.hpp"

using namespace mtss;
using testing::span;

namespace {

MediaMeta meta10() { return MediaMeta{from_ms(10000), 25.0}; }
GlobalContext room() { return GlobalContext{"A room.", "", ""}; }

Shot make_shot(std::string id, TimeRange r) {
  Shot s;
  s.id = std::move(id);
  s.time_range = r;
  s.visual_description = "Something happens.";
  s.camera.scale = "wide";
  return s;
}

AudioEvent make_music(std::string id, TimeRange r) {
  AudioEvent e;
  e.id = std::move(id);
  e.type = EventType::Music;
  e.time_range = r;
  e.description = "Strings.";
  return e;
}

ReferenceEntity make_person(std::string id) {
  ReferenceEntity r;
  r.id = std::move(id);
  r.category = Category::Person;
  r.semantic_description = "A person";
  r.appearance_anchor.detail_description = "Tall";
  return r;
}

template <class T>
std::vector<std::string> ids_of(const std::vector<T>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.id);
  return out;
}

}  // namespace

TEST_SUITE("schema") {

TEST_CASE("empty streams build a valid script") {
  auto s = build_script(meta10(), room(), {}, {}, {});
  REQUIRE(s.ok());
  CHECK(s->references.empty());
  CHECK(s->shots.empty());
  CHECK(s->events.empty());
}

TEST_CASE("duplicate shot ids are rejected") {
  auto s = build_script(meta10(), room(), {}, {make_shot("SHOT_1", span(0, 5)), make_shot("SHOT_1", span(5, 8))}, {});
  REQUIRE_FALSE(s.ok());
  CHECK(s.error().kind == StructureError::Kind::DuplicateId);
  CHECK(s.error().stream == Stream::Shots);
  CHECK(s.error().id == "SHOT_1");
}

TEST_CASE("music with a speaker is a field on the wrong category") {
  auto ev = make_music("EVENT_1", span(0, 2));
  ev.speaker = "PERSON_1";
  auto s = build_script(meta10(), room(), {make_person("PERSON_1")}, {}, {ev});
  REQUIRE_FALSE(s.ok());
  CHECK(s.error().kind == StructureError::Kind::FieldOnWrongCategory);
  CHECK(s.error().id == "EVENT_1");
  CHECK(s.error().field == "speaker");
  CHECK(s.error().path() == "events/EVENT_1/speaker");
}

TEST_CASE("structural checks") {
  SUBCASE("bad id pattern and category prefix") {
    auto r = make_person("OBJECT_1");
    auto s = build_script(meta10(), room(), {r}, {}, {});
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == StructureError::Kind::BadIdPattern);
  }
  SUBCASE("zero-length and reversed ranges") {
    for (auto r : {span(2, 2), span(5, 2), TimeRange{from_ms(-1), from_ms(5)}}) {
      auto s = build_script(meta10(), room(), {}, {make_shot("SHOT_1", r)}, {});
      REQUIRE_FALSE(s.ok());
      CHECK(s.error().kind == StructureError::Kind::BadTimeRange);
    }
  }
  SUBCASE("person-only anchor fields") {
    ReferenceEntity r;
    r.id = "OBJECT_1";
    r.category = Category::Object;
    r.semantic_description = "A mug";
    r.appearance_anchor.detail_description = "Blue";
    r.appearance_anchor.clothing = "none";
    auto s = build_script(meta10(), room(), {r}, {}, {});
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == StructureError::Kind::FieldOnWrongCategory);
    CHECK(s.error().path() == "references/OBJECT_1/appearance_anchor/clothing");
  }
  SUBCASE("dialogue requires speaker and line") {
    AudioEvent e;
    e.id = "EVENT_1";
    e.type = EventType::Dialogue;
    e.time_range = span(0, 1);
    auto s = build_script(meta10(), room(), {}, {}, {e});
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == StructureError::Kind::MissingRequiredField);
  }
  SUBCASE("camera needs one attribute") {
    auto shot = make_shot("SHOT_1", span(0, 1));
    shot.camera = {};
    CHECK_FALSE(build_script(meta10(), room(), {}, {shot}, {}).ok());
  }
  SUBCASE("malformed inline marker") {
    auto shot = make_shot("SHOT_1", span(0, 1));
    shot.visual_description = "Look [t=abc] here.";
    auto s = build_script(meta10(), room(), {}, {shot}, {});
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == StructureError::Kind::BadInlineTimestamp);
  }
  SUBCASE("link lists must hold ids of the right kind, once") {
    auto shot = make_shot("SHOT_1", span(0, 1));
    shot.references_in_shot = {"EVENT_1"};
    CHECK(build_script(meta10(), room(), {}, {shot}, {}).error().kind == StructureError::Kind::BadIdPattern);
    shot.references_in_shot = {"PERSON_1", "PERSON_1"};
    CHECK(build_script(meta10(), room(), {}, {shot}, {}).error().kind == StructureError::Kind::DuplicateId);
  }
  SUBCASE("meta values") {
    CHECK(build_script(MediaMeta{from_ms(-1), 25}, room(), {}, {}, {}).error().kind ==
          StructureError::Kind::InvalidValue);
    CHECK(build_script(MediaMeta{from_ms(1), 0}, room(), {}, {}, {}).error().kind ==
          StructureError::Kind::InvalidValue);
  }
}

TEST_CASE("check_structure reports every violation") {
  Script s{meta10(), GlobalContext{}, {}, {make_shot("SHOT_1", span(3, 1)), make_shot("SHOT_1", span(0, 1))}, {}};
  const auto errors = check_structure(s);
  CHECK(errors.size() == 3);
}

TEST_CASE("canonicalize sorts streams and link lists") {
  Script s{meta10(), room(), {}, {make_shot("SHOT_2", span(5, 8)), make_shot("SHOT_1", span(0, 5))}, {}};
  s.shots[0].references_in_shot = {"PERSON_2", "PERSON_1"};
  s.shots[1].active_events = {"EVENT_10", "EVENT_9"};
  const auto c = canonicalize(s);
  CHECK(ids_of(c.shots) == std::vector<std::string>{"SHOT_1", "SHOT_2"});
  CHECK(c.shots[1].references_in_shot == std::vector<std::string>{"PERSON_1", "PERSON_2"});
  CHECK(c.shots[0].active_events == std::vector<std::string>{"EVENT_9", "EVENT_10"});
}

TEST_CASE("canonical reference order is category then suffix") {
  ReferenceEntity scene;
  scene.id = "SCENE_1";
  scene.category = Category::Scene;
  scene.semantic_description = "A hall";
  scene.appearance_anchor.detail_description = "Large";
  Script s{meta10(), room(), {scene, make_person("PERSON_10"), make_person("PERSON_2")}, {}, {}};
  CHECK(ids_of(canonicalize(s).references) == std::vector<std::string>{"PERSON_2", "PERSON_10", "SCENE_1"});
}

TEST_CASE("canonical script reserializes byte-identically") {
  for (const auto& f : testing::load_fixtures()) {
    CAPTURE(f.name);
    CHECK(serialize(canonicalize(f.script)) == f.text);
    CHECK(serialize(canonicalize(canonicalize(f.script))) == f.text);
  }
}

TEST_CASE("property: build_script accepts the fields of any valid script") {
  testing::Rng rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_script(rng);
    REQUIRE(check_structure(s).empty());
    auto rebuilt = build_script(s.meta, s.global, s.references, s.shots, s.events);
    REQUIRE(rebuilt.ok());
    CHECK(*rebuilt == s);
  }
}

TEST_CASE("property: canonicalize is idempotent and preserves stream multisets") {
  testing::Rng rng(102);
  const auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_script(rng, {.tile = false, .consistent = false});
    const auto c = canonicalize(s);
    CHECK(canonicalize(c) == c);
    CHECK(sorted(ids_of(c.references)) == sorted(ids_of(s.references)));
    CHECK(sorted(ids_of(c.shots)) == sorted(ids_of(s.shots)));
    CHECK(sorted(ids_of(c.events)) == sorted(ids_of(s.events)));
    for (const auto& shot : s.shots) {
      const auto* cs = c.find_shot(shot.id);
      REQUIRE(cs);
      CHECK(sorted(cs->references_in_shot) == sorted(shot.references_in_shot));
      CHECK(sorted(cs->active_events) == sorted(shot.active_events));
    }
  }
}

TEST_CASE("property: injecting a duplicate id fails with DuplicateId") {
  testing::Rng rng(103);
  int injected = 0;
  for (int i = 0; i < 300; ++i) {
    auto s = testing::random_script(rng);
    const auto which = rng() % 3;
    if (which == 0 && !s.references.empty()) {
      auto dup = s.references[rng() % s.references.size()];
      s.references.push_back(dup);
    } else if (which == 1 && !s.shots.empty()) {
      auto dup = s.shots[rng() % s.shots.size()];
      s.shots.insert(s.shots.begin(), dup);
    } else if (!s.events.empty()) {
      auto dup = s.events[rng() % s.events.size()];
      dup.time_range = span(0, 0.5);
      s.events.push_back(dup);
    } else {
      continue;
    }
    ++injected;
    auto r = build_script(s.meta, s.global, s.references, s.shots, s.events);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == StructureError::Kind::DuplicateId);
  }
  CHECK(injected > 200);
}

TEST_CASE("lookup helpers") {
  Script s{meta10(), room(), {make_person("PERSON_1")}, {make_shot("SHOT_1", span(0, 1))}, {make_music("EVENT_1", span(0, 1))}};
  CHECK(s.find_reference("PERSON_1") != nullptr);
  CHECK(s.find_shot("SHOT_2") == nullptr);
  CHECK(s.find_event("EVENT_1")->type == EventType::Music);
  CHECK(join_path("shots", "SHOT_1", "time_range") == "shots/SHOT_1/time_range");
  CHECK(join_path("references", "PERSON_1") == "references/PERSON_1");
}

}  // TEST_SUITE
