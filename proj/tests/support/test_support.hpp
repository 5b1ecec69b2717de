#pragma once
// Shared helpers for the unit, property and acceptance suites: fixture
// loading, seeded random scripts, single-rule mutations and brute-force
// oracles written without the library's index or solver code.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtss/assignment.hpp"
#include "mtss/document.hpp"
#include "mtss/schema.hpp"
#include "mtss/time.hpp"

namespace mtss::testing {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------- fixtures

struct Fixture {
  std::string name;
  std::string text;
  Script script;
};

std::filesystem::path fixture_dir();
/// Every *.mtss.json under the fixture directory, sorted by file name.
std::vector<Fixture> load_fixtures();
std::string read_file(const std::filesystem::path& path);
/// Fixtures with at least `min_dialogue` dialogue events.
std::vector<Fixture> dialogue_heavy(const std::vector<Fixture>& all, std::size_t min_dialogue = 6);

// -------------------------------------------------------------- generators

struct ScriptShape {
  std::size_t max_entities = 6;
  std::size_t max_shots = 6;
  std::size_t max_events = 6;
  /// Shots tile [0, duration) exactly; otherwise ranges are independent.
  bool tile = true;
  /// Speakers cited by every overlapping shot and active_events filled from
  /// the overlap oracle, so the result lints clean.
  bool consistent = true;
  /// Emit inline markers inside shot descriptions.
  bool markers = true;
  /// Time grid in ms; coarse grids produce many touching and equal ranges.
  std::int64_t grid = 100;
  std::int64_t max_duration = 60000;
};

Script random_script(Rng& rng, const ScriptShape& shape = {});
std::string random_sentence(Rng& rng, std::size_t words);
/// Random printable text, sometimes with quotes, escapes and UTF-8.
std::string random_text(Rng& rng, std::size_t max_len);

/// Rule codes of the lint catalog, in catalog order.
const std::vector<std::string>& all_rule_codes();

/// Injects exactly one violation of `code` into a copy of a clean script.
/// Returns nullopt when the script lacks the elements the mutation needs.
std::optional<Script> inject_violation(const Script& clean, const std::string& code, Rng& rng);

/// Random byte strings and corrupted documents for the parser fuzzer.
std::string fuzz_bytes(Rng& rng, std::size_t max_len);
std::string mutate_document(const std::string& doc, Rng& rng);

// ----------------------------------------------------------------- oracles

/// Intersection length of two half-open ranges, by definition.
std::int64_t brute_overlap_ms(const TimeRange& a, const TimeRange& b);
bool brute_overlaps(const TimeRange& a, const TimeRange& b);

/// Per shot: ids of events overlapping by more than 1 ms, in (start, id) order.
std::vector<std::pair<std::string, std::vector<std::string>>> brute_active_events(const Script& s);

/// (code, subject) pairs for every rule, computed by nested loops over all
/// (shot, shot), (shot, event) and (entity, citation) pairs.
std::set<std::pair<std::string, std::string>> brute_lint(const Script& s);

/// Canonical field paths that differ between two scripts, from an in-memory
/// walk of the typed model rather than from serialized text.
std::set<std::string> brute_field_diff(const Script& before, const Script& after);

/// Minimum-cost one-to-one assignment by enumerating every injection of the
/// smaller side into the larger. Returns the optimum total.
double brute_min_cost(const Matrix& cost);
/// Maximum total weight over matchings that use only positive-weight pairs.
double brute_max_weight(const Matrix& weight);

/// Millis from a seconds literal, for readable test data.
inline Millis sec(double s) { return from_ms(static_cast<std::int64_t>(s * 1000.0 + (s >= 0 ? 0.5 : -0.5))); }
inline TimeRange span(double a, double b) { return TimeRange{sec(a), sec(b)}; }

}  // namespace mtss::testing
