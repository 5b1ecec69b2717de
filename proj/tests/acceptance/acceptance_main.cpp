// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Thresholds live in the constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mtss/edits.hpp"
#include "mtss/evalx.hpp"
#include "mtss/inline_timestamps.hpp"
#include "mtss/parser.hpp"
#include "mtss/render.hpp"
#include "mtss/stats.hpp"
#include "mtss/timeline.hpp"
#include "mtss/validator.hpp"
#include "test_support.hpp"

using namespace mtss;
namespace T = mtss::testing;

namespace {

constexpr double kRoundTripBudget = 1.0;
constexpr double kLintBudget = 5.0;
constexpr std::size_t kLintMinFixtures = 5;
constexpr double kTimelineBudget = 30.0;
constexpr int kTimelineScripts = 1000;
constexpr std::size_t kTimelineMaxItems = 50;
constexpr int kLocalityEdits = 200;
constexpr double kFootprintRatioLimit = 0.1;
constexpr int kEvalPairs = 500;
constexpr double kEvalTolerance = 1e-9;
constexpr double kEvalBudget = 30.0;
constexpr int kSplitMergeTriples = 200;
constexpr int kFuzzInputs = 100000;
constexpr int kFuzzMutatedDocuments = 20000;
constexpr double kFuzzPerInputLimit = 0.1;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %-22s %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::set<std::pair<std::string, std::string>> findings(const DiagnosticSet& d) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& item : d.items) out.emplace(item.code, item.subject);
  return out;
}

template <class T>
std::vector<std::string> brute_stab(const std::vector<T>& xs, Millis t) {
  std::vector<const T*> hits;
  for (const auto& x : xs)
    if (x.time_range.start <= t && t < x.time_range.end) hits.push_back(&x);
  std::sort(hits.begin(), hits.end(), [](const T* a, const T* b) {
    if (a->time_range.start != b->time_range.start) return a->time_range.start < b->time_range.start;
    return id_number(a->id) < id_number(b->id);
  });
  std::vector<std::string> out;
  for (const auto* h : hits) out.push_back(h->id);
  return out;
}

double brute_iou(const TimeRange& a, const TimeRange& b) {
  const double inter = static_cast<double>(T::brute_overlap_ms(a, b));
  const double uni = static_cast<double>((a.end - a.start).count + (b.end - b.start).count) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

Outcome round_trip(const std::vector<T::Fixture>& fixtures) {
  const auto t0 = Clock::now();
  std::size_t exact = 0;
  for (const auto& f : fixtures) {
    auto parsed = parse_document(f.text);
    if (parsed && serialize(*parsed) == f.text) ++exact;
  }
  const double secs = since(t0);
  return {exact == fixtures.size() && secs < kRoundTripBudget,
          fmt("%zu/%zu fixtures byte-identical in %.3f s (limit %.1f s)", exact, fixtures.size(), secs,
              kRoundTripBudget)};
}

Outcome lint(const std::vector<T::Fixture>& fixtures) {
  const auto t0 = Clock::now();
  T::Rng rng(9001);
  std::size_t false_positives = 0, missed = 0, cases = 0;
  std::size_t thin_rules = 0;
  for (const auto& f : fixtures) false_positives += validate(f.script).items.size();
  for (const auto& code : T::all_rule_codes()) {
    std::size_t applied = 0;
    for (const auto& f : fixtures) {
      auto mutated = T::inject_violation(f.script, code, rng);
      if (!mutated) continue;
      ++applied;
      ++cases;
      const auto got = findings(validate(*mutated));
      const auto expected = T::brute_lint(*mutated);
      bool hit = false;
      for (const auto& [c, subject] : got) hit |= c == code;
      if (!hit) ++missed;
      for (const auto& item : got)
        if (!expected.count(item)) ++false_positives;
    }
    if (applied < kLintMinFixtures) ++thin_rules;
  }
  const double secs = since(t0);
  return {missed == 0 && false_positives == 0 && thin_rules == 0 && secs < kLintBudget,
          fmt("%zu rules, %zu mutations, %zu missed, %zu false positives, %zu rules under %zu fixtures, %.3f s",
              T::all_rule_codes().size(), cases, missed, false_positives, thin_rules, kLintMinFixtures, secs)};
}

Outcome timeline() {
  const auto t0 = Clock::now();
  T::Rng rng(9002);
  std::size_t mismatches = 0, queries = 0;
  for (int i = 0; i < kTimelineScripts; ++i) {
    const auto s = T::random_script(
        rng, {.max_entities = 2, .max_shots = kTimelineMaxItems, .max_events = kTimelineMaxItems, .tile = i % 2 == 0,
              .consistent = false, .markers = false, .grid = i % 3 == 0 ? 1 : 100, .max_duration = 30000});
    const auto idx = build_index(s);
    const auto inferred = infer_active_events(s);
    for (const auto& [id, events] : T::brute_active_events(s)) {
      ++queries;
      if (inferred.at(id) != events) ++mismatches;
    }
    for (int q = 0; q < 10; ++q) {
      const Millis t = from_ms(static_cast<std::int64_t>(rng() % 31000));
      queries += 2;
      if (idx.shots_active_at(t) != brute_stab(s.shots, t)) ++mismatches;
      if (idx.events_active_at(t) != brute_stab(s.events, t)) ++mismatches;
    }
  }
  const double secs = since(t0);
  return {mismatches == 0 && secs < kTimelineBudget,
          fmt("%d scripts, %zu queries, %zu mismatches, %.3f s", kTimelineScripts, queries, mismatches, secs)};
}

Outcome locality(const std::vector<T::Fixture>& fixtures) {
  T::Rng rng(9003);
  int bad = 0;
  for (int i = 0; i < kLocalityEdits;) {
    const auto& base = fixtures[rng() % fixtures.size()].script;
    std::vector<std::string> paths;
    for (const auto& s : base.shots) paths.push_back("shots/" + s.id + "/visual_description");
    for (const auto& e : base.events) paths.push_back("events/" + e.id + "/description");
    if (paths.empty()) continue;
    ++i;
    const auto path = paths[rng() % paths.size()];
    auto r = mtss::apply(base, SetField{path, Value::string(T::random_sentence(rng, 6) + ".")});
    if (!r || r->footprint.changed_paths != std::vector<std::string>{path}) {
      ++bad;
      continue;
    }
    const auto owner = path.substr(0, path.rfind('/'));
    for (const auto& s : base.shots) {
      if ("shots/" + s.id == owner) continue;
      const auto* after = r->script.find_shot(s.id);
      if (!after || print_value(to_value(*after)) != print_value(to_value(s))) ++bad;
    }
    for (const auto& e : base.events) {
      if ("events/" + e.id == owner) continue;
      const auto* after = r->script.find_event(e.id);
      if (!after || print_value(to_value(*after)) != print_value(to_value(e))) ++bad;
    }
    for (const auto& ref : base.references) {
      const auto* after = r->script.find_reference(ref.id);
      if (!after || print_value(to_value(*after)) != print_value(to_value(ref))) ++bad;
    }
  }
  double worst = 0.0;
  std::string ratios;
  const auto heavy = T::dialogue_heavy(fixtures);
  for (const auto& f : heavy) {
    const auto fp = footprint_probe(f.script);
    worst = std::max(worst, fp.ratio);
    ratios += fmt(" %s=%.4f", f.name.c_str(), fp.ratio);
  }
  return {bad == 0 && !heavy.empty() && worst < kFootprintRatioLimit,
          fmt("%d edits, %d non-local; footprint ratio max %.4f (limit %.2f):%s", kLocalityEdits, bad, worst,
              kFootprintRatioLimit, ratios.c_str())};
}

Outcome evaluation() {
  const auto t0 = Clock::now();
  T::Rng rng(9004);
  int bad = 0;
  double worst = 0.0;
  const auto check = [&](double got, double want) {
    const double d = std::fabs(got - want);
    worst = std::max(worst, d);
    if (d > kEvalTolerance) ++bad;
  };
  for (int i = 0; i < kEvalPairs; ++i) {
    const T::ScriptShape shape{.max_entities = 6, .max_shots = 6, .max_events = 6, .tile = true, .consistent = false};
    const auto gold = T::random_script(rng, shape);
    auto cand = T::random_script(rng, shape);
    cand.meta = gold.meta;
    // Rescale candidate shots onto the gold duration so cuts are comparable.
    if (!cand.shots.empty()) {
      auto c = canonicalize(cand);
      const double k = static_cast<double>(gold.meta.duration.count) /
                       static_cast<double>(std::max<std::int64_t>(1, c.shots.back().time_range.end.count));
      for (auto& s : cand.shots) {
        s.time_range.start = from_ms(static_cast<std::int64_t>(std::llround(s.time_range.start.count * k)));
        s.time_range.end = from_ms(static_cast<std::int64_t>(std::llround(s.time_range.end.count * k)));
      }
    }

    Matrix shots(gold.shots.size(), std::vector<double>(cand.shots.size()));
    for (std::size_t a = 0; a < gold.shots.size(); ++a)
      for (std::size_t b = 0; b < cand.shots.size(); ++b) {
        const double w = brute_iou(gold.shots[a].time_range, cand.shots[b].time_range);
        shots[a][b] = w > kMinMatchScore ? w : 0.0;
      }
    Matrix events(gold.events.size(), std::vector<double>(cand.events.size()));
    for (std::size_t a = 0; a < gold.events.size(); ++a)
      for (std::size_t b = 0; b < cand.events.size(); ++b) {
        const double w = gold.events[a].type == cand.events[b].type
                             ? brute_iou(gold.events[a].time_range, cand.events[b].time_range)
                             : 0.0;
        events[a][b] = w > kMinMatchScore ? w : 0.0;
      }
    check(match_stream(gold, cand, StreamKind::Shots).total_score(), T::brute_max_weight(shots));
    check(match_stream(gold, cand, StreamKind::Events).total_score(), T::brute_max_weight(events));

    std::vector<Millis> gb, cb;
    const auto cuts = [](const Script& s, std::vector<Millis>& out) {
      std::set<Millis> edges;
      for (const auto& shot : s.shots) {
        edges.insert(shot.time_range.start);
        edges.insert(shot.time_range.end);
      }
      edges.erase(from_ms(0));
      edges.erase(s.meta.duration);
      out.assign(edges.begin(), edges.end());
    };
    cuts(gold, gb);
    cuts(cand, cb);
    Matrix cost(gb.size(), std::vector<double>(cb.size()));
    for (std::size_t a = 0; a < gb.size(); ++a)
      for (std::size_t b = 0; b < cb.size(); ++b)
        cost[a][b] = std::fabs(static_cast<double>((gb[a] - cb[b]).count)) / 1000.0;
    const std::size_t paired = std::min(gb.size(), cb.size());
    const std::size_t lone = gb.size() + cb.size() - 2 * paired;
    const double optimum = paired ? T::brute_min_cost(cost) : 0.0;
    const std::size_t n = paired + lone;
    const double want = n ? (optimum + kDefaultUnmatchedPenalty * static_cast<double>(lone)) / static_cast<double>(n) : 0.0;
    auto got = boundary_deviation(gold, cand);
    if (!got) {
      ++bad;
      continue;
    }
    check(got->seconds, want);
  }

  // Gold cuts {2.0, 5.0} against candidate cuts {2.5, 4.5}, checked by hand:
  // both pairs are 0.5 s apart, and 0.5 s at 25 fps is 12.5, rounded up to 13.
  const auto tiled = [](double c1, double c2) {
    Script s;
    s.meta = {T::sec(10), 25.0};
    s.global.scene_description = "x";
    const double edges[] = {0, c1, c2, 10};
    for (int k = 0; k < 3; ++k) {
      Shot shot;
      shot.id = "SHOT_" + std::to_string(k + 1);
      shot.visual_description = "x";
      shot.camera.scale = "wide";
      shot.time_range = T::span(edges[k], edges[k + 1]);
      s.shots.push_back(shot);
    }
    return s;
  };
  const auto a = tiled(2.0, 5.0);
  const auto b = tiled(2.5, 4.5);
  const auto example = boundary_deviation(a, b);
  const bool example_ok = example && std::fabs(example->seconds - 0.5) < kEvalTolerance && example->frames == 13;
  const double secs = since(t0);
  return {bad == 0 && example_ok && secs < kEvalBudget,
          fmt("%d pairs, %d off-optimum, max |delta| %.2e (tol %.0e); cuts {2,5} vs {2.5,4.5} -> %.3f s / %lld frames; %.3f s",
              kEvalPairs, bad, worst, kEvalTolerance, example ? example->seconds : -1.0,
              example ? example->frames : -1LL, secs)};
}

Outcome split_merge() {
  T::Rng rng(9005);
  int done = 0, bad = 0, attempts = 0;
  while (done < kSplitMergeTriples && attempts < 20 * kSplitMergeTriples) {
    ++attempts;
    const auto base = canonicalize(T::random_script(rng));
    if (base.shots.empty()) continue;
    const auto& target = base.shots[rng() % base.shots.size()];
    const auto len = target.time_range.length().count;
    if (len < 2) continue;
    const Millis cut = target.time_range.start + from_ms(1 + static_cast<std::int64_t>(rng() % (len - 1)));
    ++done;
    auto split = split_shot(base, target.id, cut);
    if (!split) {
      ++bad;
      continue;
    }
    std::string first, second;
    for (const auto& s : split->script.shots) {
      if (s.time_range.end == cut && s.time_range.start == target.time_range.start) first = s.id;
      if (s.time_range.start == cut && s.time_range.end == target.time_range.end) second = s.id;
    }
    auto merged = merge_shots(split->script, first, second);
    if (!merged) {
      ++bad;
      continue;
    }
    const auto* m = merged->script.find_shot(first);
    auto markers = [](const std::string& d) {
      std::multiset<std::pair<Millis, std::string>> out;
      const auto extracted = extract_inline_timestamps(d).value();
      for (const auto& ts : extracted.timestamps) out.emplace(ts.time, ts.marker);
      return out;
    };
    auto as_set = [](const std::vector<std::string>& v) { return std::set<std::string>(v.begin(), v.end()); };
    const bool same = m && m->time_range == target.time_range && m->camera == target.camera &&
                      as_set(m->references_in_shot) == as_set(target.references_in_shot) &&
                      as_set(m->active_events) == as_set(target.active_events) &&
                      markers(m->visual_description) == markers(target.visual_description) &&
                      merged->script.shots.size() == base.shots.size() && merged->script.events == base.events &&
                      merged->script.references == base.references;
    if (!same) ++bad;
  }
  return {done == kSplitMergeTriples && bad == 0,
          fmt("%d (script, shot, cut) triples, %d not restored up to ids", done, bad)};
}

Outcome fuzz(const std::vector<T::Fixture>& fixtures) {
  T::Rng rng(9006);
  double slowest = 0.0;
  int accepted = 0, crashes = 0;
  for (int i = 0; i < kFuzzInputs + kFuzzMutatedDocuments; ++i) {
    const std::string input = i < kFuzzInputs ? T::fuzz_bytes(rng, 256)
                                              : T::mutate_document(fixtures[rng() % fixtures.size()].text, rng);
    const auto t0 = Clock::now();
    try {
      auto r = parse_document(input);
      if (r) {
        ++accepted;
        (void)validate(*r);
      }
    } catch (...) {
      ++crashes;
    }
    slowest = std::max(slowest, since(t0));
  }
  return {crashes == 0 && slowest < kFuzzPerInputLimit,
          fmt("%d random + %d mutated inputs, %d parsed, %d escaped exceptions, slowest %.2f ms (limit %.0f ms)",
              kFuzzInputs, kFuzzMutatedDocuments, accepted,
              crashes, slowest * 1000.0, kFuzzPerInputLimit * 1000.0)};
}

Outcome determinism(const std::vector<T::Fixture>& fixtures) {
  int differing = 0;
  const auto snapshot = [](const Script& s) {
    std::string out = serialize(s);
    for (const auto& d : validate(s).items) out += format_diagnostic_line(d) + "\n";
    if (auto r = render_monolithic(s, true)) out += *r;
    if (auto p = render_shot_prompts(s)) out += print_value(to_value(*p));
    if (auto e = evaluate(s, s)) out += print_value(to_value(*e));
    if (auto b = boundaries(s)) out += std::to_string(b->size());
    out += format_stats(compute_stats(s));
    return out;
  };
  for (const auto& f : fixtures) {
    const auto a = snapshot(f.script);
    const auto reparsed = parse_document(f.text);
    if (!reparsed || snapshot(*reparsed) != a || snapshot(f.script) != a) ++differing;
  }
  return {differing == 0, fmt("%zu fixtures, %d with differing output across runs", fixtures.size(), differing)};
}

}  // namespace

int main() {
  std::vector<T::Fixture> fixtures;
  try {
    fixtures = T::load_fixtures();
  } catch (const std::exception& e) {
    std::printf("FAIL fixtures: %s\n", e.what());
    return 1;
  }
  report(1, "round-trip", [&] { return round_trip(fixtures); });
  report(2, "lint-coverage", [&] { return lint(fixtures); });
  report(3, "timeline-oracle", [] { return timeline(); });
  report(4, "edit-locality", [&] { return locality(fixtures); });
  report(5, "evaluation-optimality", [] { return evaluation(); });
  report(6, "split-merge-inverse", [] { return split_merge(); });
  report(7, "parser-fuzz", [&] { return fuzz(fixtures); });
  report(8, "determinism", [&] { return determinism(fixtures); });
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
