#include <algorithm>

#include "doctest.h"
#include "mtss/inline_timestamps.hpp"
#include "mtss/parser.hpp"
#include "test_support.hpp"

using namespace mtss;

namespace {

const char* kMinimal = R"({"meta": {"duration": 10}, "global": {"scene_description": "A room."}})";

std::vector<ParseDiagnostic> parse_errors(std::string_view text) {
  auto r = parse_document(text);
  REQUIRE_FALSE(r.ok());
  return r.error();
}

std::string spanned(std::string_view text, const SourceSpan& s) {
  return std::string(text.substr(s.byte_offset_start, s.byte_offset_end - s.byte_offset_start));
}

std::string with_shot(std::string_view shot_body) {
  return std::string(R"({"meta": {"duration": 10}, "global": {"scene_description": "A room."}, "shots": [)") +
         std::string(shot_body) + "]}";
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("minimal document") {
  auto r = parse_document(kMinimal);
  REQUIRE(r.ok());
  CHECK(r->references.empty());
  CHECK(r->shots.empty());
  CHECK(r->events.empty());
  CHECK(r->meta.duration == from_ms(10000));
  CHECK(r->meta.fps == 25.0);
  CHECK(r->global.scene_description == "A room.");
}

TEST_CASE("reversed time range is P004 on the time_range value") {
  const auto text = with_shot(
      R"({"id": "SHOT_1", "time_range": [5, 2], "visual_description": "x", "camera": {"scale": "wide"}})");
  const auto errs = parse_errors(text);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].code == parse_codes::kSchema);
  CHECK(spanned(text, errs[0].span) == "[5, 2]");
}

TEST_CASE("unknown field is P002 on the key") {
  const auto text = with_shot(
      R"({"id": "SHOT_1", "time_range": [0, 2], "visual_description": "x", "camera": {"scale": "wide"}, "colour_grade": "teal"})");
  const auto errs = parse_errors(text);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].code == parse_codes::kUnknownField);
  CHECK(spanned(text, errs[0].span) == "\"colour_grade\"");
}

TEST_CASE("wrong value types are P003") {
  const auto text = with_shot(
      R"({"id": 7, "time_range": [0, 2], "visual_description": "x", "camera": {"scale": "wide"}})");
  const auto errs = parse_errors(text);
  REQUIRE_FALSE(errs.empty());
  CHECK(errs[0].code == parse_codes::kWrongType);
  CHECK(spanned(text, errs[0].span) == "7");
}

TEST_CASE("missing required members are P004") {
  const auto errs = parse_errors(R"({"meta": {"duration": 10}})");
  CHECK(errs[0].code == parse_codes::kSchema);
}

TEST_CASE("bad inline marker is P005") {
  const auto text =
      with_shot(R"({"id": "SHOT_1", "time_range": [0, 2], "visual_description": "go [t=1:75] now", "camera": {"scale": "wide"}})");
  const auto errs = parse_errors(text);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].code == parse_codes::kBadTimestamp);
}

TEST_CASE("syntax errors are P001 with location") {
  const auto errs = parse_errors("{\n  \"meta\": {\"duration\": 10,}\n}");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].code == parse_codes::kSyntax);
  CHECK(errs[0].span.line == 2);
  CHECK(format_diagnostic(errs[0], "x.mtss.json").rfind("x.mtss.json:2:", 0) == 0);
}

TEST_CASE("all decode problems are reported together") {
  const auto text = std::string(R"({"meta": {"duration": 10, "fps": "fast"}, "global": {"scene_description": 3}, "bogus": 1})");
  const auto errs = parse_errors(text);
  CHECK(errs.size() == 3);
}

TEST_CASE("inline timestamp extraction") {
  SUBCASE("single seconds marker") {
    auto r = extract_inline_timestamps("He turns [t=3.2] and smiles.");
    REQUIRE(r.ok());
    REQUIRE(r->timestamps.size() == 1);
    CHECK(r->timestamps[0].text_offset == 9);
    CHECK(r->timestamps[0].time == from_ms(3200));
    CHECK(r->stripped_text == "He turns  and smiles.");
  }
  SUBCASE("minutes and seconds") {
    auto r = extract_inline_timestamps("[t=01:02.5] door slams");
    REQUIRE(r.ok());
    REQUIRE(r->timestamps.size() == 1);
    CHECK(r->timestamps[0].text_offset == 0);
    // 1 minute and 2.5 seconds, converted by hand.
    CHECK(r->timestamps[0].time == from_ms(1 * 60 * 1000 + 2500));
    CHECK(to_seconds(r->timestamps[0].time) == doctest::Approx(62.5));
  }
  SUBCASE("ordinary brackets are text") {
    auto r = extract_inline_timestamps("array[i] is set");
    REQUIRE(r.ok());
    CHECK(r->timestamps.empty());
    CHECK(r->stripped_text == "array[i] is set");
  }
  SUBCASE("malformed markers") {
    for (const char* bad : {"[t=]", "[t=abc]", "[t=1:60.0]", "[t=1.2", "x [t=-1] y", "[t=1:2:3]", "[t=01:]"}) {
      CAPTURE(bad);
      CHECK_FALSE(extract_inline_timestamps(bad).ok());
    }
  }
  SUBCASE("offsets are bytes in the original text") {
    auto r = extract_inline_timestamps("é [t=1] b [t=2]");
    REQUIRE(r.ok());
    REQUIRE(r->timestamps.size() == 2);
    CHECK(r->timestamps[0].text_offset == 3);
    CHECK(r->timestamps[1].text_offset == 3 + 5 + 3);
    CHECK(r->timestamps[1].marker == "[t=2]");
  }
}

TEST_CASE("property: reinserting markers reproduces the description") {
  testing::Rng rng(201);
  for (int i = 0; i < 500; ++i) {
    const auto s = testing::random_script(rng);
    for (const auto& shot : s.shots) {
      auto r = extract_inline_timestamps(shot.visual_description);
      REQUIRE(r.ok());
      CHECK(reinsert_timestamps(r->stripped_text, r->timestamps) == shot.visual_description);
    }
    std::string noisy = testing::random_text(rng, 20) + " [t=" + std::to_string(rng() % 90) + "] " +
                        testing::random_text(rng, 20);
    auto r = extract_inline_timestamps(noisy);
    REQUIRE(r.ok());
    CHECK(reinsert_timestamps(r->stripped_text, r->timestamps) == noisy);
  }
}

TEST_CASE("serialize formats times with three decimals") {
  auto s = parse_document(kMinimal).value();
  Shot shot;
  shot.id = "SHOT_1";
  shot.time_range = {from_ms(0), from_ms(3200)};
  shot.visual_description = "x";
  shot.camera.scale = "wide";
  s.shots.push_back(shot);
  const auto text = serialize(s);
  CHECK(text.find("\"time_range\": [0.000, 3.200]") != std::string::npos);
  CHECK(text.find("\"duration\": 10.000") != std::string::npos);
  CHECK(serialize(s) == text);
  CHECK(text.back() == '\n');
}

TEST_CASE("fixture corpus round-trips byte for byte") {
  const auto fixtures = testing::load_fixtures();
  CHECK(fixtures.size() >= 20);
  for (const auto& f : fixtures) {
    CAPTURE(f.name);
    CHECK(serialize(f.script) == f.text);
    auto again = parse_document(serialize(f.script));
    REQUIRE(again.ok());
    CHECK(*again == canonicalize(f.script));
  }
}

TEST_CASE("property: parse(serialize(s)) == canonicalize(s)") {
  testing::Rng rng(202);
  for (int i = 0; i < 400; ++i) {
    const auto s = testing::random_script(rng, {.tile = i % 2 == 0, .consistent = i % 3 != 0});
    const auto text = serialize(s);
    auto back = parse_document(text);
    REQUIRE_MESSAGE(back.ok(), text);
    CHECK(*back == canonicalize(s));
    CHECK(serialize(*back) == text);
  }
}

TEST_CASE("member order and omitted optionals are accepted on input") {
  const auto text = std::string(R"({
    "events": [{"description": "", "time_range": [1, 2], "type": "music", "id": "EVENT_1"}],
    "global": {"scene_description": "A room."},
    "meta": {"fps": 24, "duration": 10.0}
  })");
  auto r = parse_document(text);
  REQUIRE(r.ok());
  CHECK(r->meta.fps == 24.0);
  CHECK(r->events.size() == 1);
  const auto canonical = serialize(*r);
  auto again = parse_document(canonical);
  REQUIRE(again.ok());
  CHECK(serialize(*again) == canonical);
}

TEST_CASE("property: fuzzed input never escapes as an exception") {
  testing::Rng rng(203);
  const auto fixtures = testing::load_fixtures();
  for (int i = 0; i < 3000; ++i) {
    const std::string input = i % 2 ? testing::fuzz_bytes(rng, 200)
                                    : testing::mutate_document(fixtures[rng() % fixtures.size()].text, rng);
    ParseResult r = parse_document(input);
    if (r.ok()) {
      CHECK(check_structure(*r).empty());
    } else {
      CHECK_FALSE(r.error().empty());
      for (const auto& d : r.error()) {
        CHECK(d.span.byte_offset_start <= d.span.byte_offset_end);
        CHECK(d.span.byte_offset_end <= input.size());
        CHECK(d.code.size() == 4);
      }
    }
  }
}

}  // TEST_SUITE
