#pragma once

// Script-vs-script evaluation: shot boundary deviation, one-to-one stream
// matching and per-stream precision/recall/F1.
//
// Conventions (configurable where noted):
//  * Boundary deviation assigns min(|gold|, |cand|) boundary pairs with
//    minimum total |dt|; each unmatched boundary on either side costs
//    `unmatched_penalty` seconds; the result is the mean cost per boundary
//    (pairs + unmatched). Frames = seconds * fps, rounded half up.
//  * Shots and events match on temporal IoU (events only with equal type),
//    entities on token F1 of semantic_description within equal category.
//    Pairs scoring <= 0.1 never match.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtss/assignment.hpp"
#include "mtss/document.hpp"
#include "mtss/result.hpp"
#include "mtss/schema.hpp"

namespace mtss {

inline constexpr double kMinMatchScore = 0.1;
inline constexpr std::size_t kExhaustiveMatchLimit = 6;
inline constexpr std::size_t kExhaustiveBoundaryLimit = 8;
inline constexpr double kDefaultUnmatchedPenalty = 1.0;

enum class StreamKind { Shots, Events, Entities };

std::string_view stream_kind_name(StreamKind k);

struct UnknownKind {
  std::string kind;
};

Result<StreamKind, UnknownKind> parse_stream_kind(std::string_view name);

struct MatchPair {
  std::string gold_id;
  std::string candidate_id;
  double score = 0.0;
};

struct Matching {
  std::vector<MatchPair> pairs;  ///< ordered by gold id
  std::vector<std::string> unmatched_gold;
  std::vector<std::string> unmatched_candidate;

  double total_score() const;
};

/// Case-folded, punctuation-stripped, whitespace-tokenized multiset F1.
double token_f1(std::string_view gold, std::string_view candidate);

Matching match_shots(std::span<const Shot> gold, std::span<const Shot> cand,
                     AssignmentMethod method = AssignmentMethod::Auto);
Matching match_events(std::span<const AudioEvent> gold, std::span<const AudioEvent> cand,
                      AssignmentMethod method = AssignmentMethod::Auto);
Matching match_entities(std::span<const ReferenceEntity> gold, std::span<const ReferenceEntity> cand,
                        AssignmentMethod method = AssignmentMethod::Auto);

Matching match_stream(const Script& gold, const Script& cand, StreamKind kind,
                      AssignmentMethod method = AssignmentMethod::Auto);
Result<Matching, UnknownKind> match_stream(const Script& gold, const Script& cand, std::string_view kind);

struct DurationMismatch {
  std::string message;
};

struct BoundaryDeviation {
  double seconds = 0.0;
  long long frames = 0;
  std::size_t matched = 0;
  std::size_t unmatched = 0;
  std::vector<std::pair<Millis, Millis>> pairs;  ///< (gold, candidate)
};

/// Boundaries of a script with no shots count as an empty set here.
Result<BoundaryDeviation, DurationMismatch> boundary_deviation(const Script& gold, const Script& cand,
                                                               double unmatched_penalty = kDefaultUnmatchedPenalty,
                                                               AssignmentMethod method = AssignmentMethod::Auto);

/// Boundary deviation between two plain boundary lists.
BoundaryDeviation boundary_deviation(std::span<const Millis> gold, std::span<const Millis> cand, double fps,
                                     double unmatched_penalty, AssignmentMethod method = AssignmentMethod::Auto);

long long seconds_to_frames(double seconds, double fps);

struct StreamScore {
  std::size_t gold_count = 0;
  std::size_t candidate_count = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  Matching matching;
};

struct EvalConfig {
  double unmatched_penalty = kDefaultUnmatchedPenalty;
  AssignmentMethod method = AssignmentMethod::Auto;
};

struct EvalReport {
  BoundaryDeviation boundary;
  StreamScore shots;
  StreamScore entities;
  StreamScore events;
};

StreamScore score_stream(std::size_t gold_count, std::size_t candidate_count, Matching matching);

Result<EvalReport, DurationMismatch> evaluate(const Script& gold, const Script& cand, const EvalConfig& config = {});

Value to_value(const EvalReport& report);
/// Fixed-order human table.
std::string format_eval_table(const EvalReport& report);

}  // namespace mtss
