#pragma once

// Interval index over a script's shots and events. Each stream is kept in a
// start-sorted array viewed as an implicit balanced tree whose nodes carry the
// maximum end time of their subtree, so stabbing and overlap queries run in
// O(log n + k). The index is rebuilt from scratch whenever the script changes.

#include <map>
#include <string>
#include <vector>

#include "mtss/result.hpp"
#include "mtss/schema.hpp"

namespace mtss {

struct Overlap {
  Millis length;
  double iou = 0.0;
};

/// length = max(0, min(a.end, b.end) - max(a.start, b.start)); iou = length / union.
Overlap overlap(const TimeRange& a, const TimeRange& b);

/// True when the intersection is longer than kEpsilon. Touching half-open
/// ranges never overlap.
bool overlaps(const TimeRange& a, const TimeRange& b);

class IntervalIndex {
 public:
  struct Entry {
    TimeRange range;
    std::string id;
  };

  IntervalIndex() = default;
  explicit IntervalIndex(std::vector<Entry> entries);

  /// Entries with start <= t < end.
  std::vector<const Entry*> stab(Millis t) const;
  /// Entries whose intersection with `range` is longer than `min_overlap`.
  std::vector<const Entry*> overlapping(const TimeRange& range, Millis min_overlap = kEpsilon) const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  void build(std::size_t lo, std::size_t hi);
  void stab_into(std::size_t lo, std::size_t hi, Millis t, std::vector<const Entry*>& out) const;
  void overlap_into(std::size_t lo, std::size_t hi, const TimeRange& q, Millis min_overlap,
                    std::vector<const Entry*>& out) const;

  std::vector<Entry> entries_;      // sorted by (start, id)
  std::vector<Millis> subtree_end_;  // max end over the implicit subtree rooted at i
};

class TimelineIndex {
 public:
  explicit TimelineIndex(const Script& script);

  // Results are ids ordered by (start, id).
  std::vector<std::string> shots_active_at(Millis t) const;
  std::vector<std::string> events_active_at(Millis t) const;
  std::vector<std::string> shots_overlapping(const TimeRange& range) const;
  std::vector<std::string> events_overlapping(const TimeRange& range) const;

  const IntervalIndex& shots() const { return shots_; }
  const IntervalIndex& events() const { return events_; }

 private:
  IntervalIndex shots_;
  IntervalIndex events_;
};

TimelineIndex build_index(const Script& script);

/// For every shot, the events overlapping it by more than kEpsilon, ordered
/// by event start then id. Ignores stored active_events.
std::map<std::string, std::vector<std::string>> infer_active_events(const Script& script);

struct EmptyShotStream {};

/// Sorted, deduplicated shot start/end times strictly inside (0, duration).
/// With an unknown (zero) duration the latest shot end stands in for it.
Result<std::vector<Millis>, EmptyShotStream> boundaries(const Script& script);

}  // namespace mtss
