#include "mtss/timeline.hpp"

#include <algorithm>

namespace mtss {

Overlap overlap(const TimeRange& a, const TimeRange& b) {
  const Millis lo = std::max(a.start, b.start);
  const Millis hi = std::min(a.end, b.end);
  const Millis length = hi > lo ? hi - lo : Millis{0};
  const Millis uni = a.length() + b.length() - length;
  const double iou = uni.count > 0 ? static_cast<double>(length.count) / static_cast<double>(uni.count) : 0.0;
  return {length, iou};
}

bool overlaps(const TimeRange& a, const TimeRange& b) { return overlap(a, b).length > kEpsilon; }

namespace {

bool entry_less(const IntervalIndex::Entry& a, const IntervalIndex::Entry& b) {
  if (a.range.start != b.range.start) return a.range.start < b.range.start;
  if (a.id != b.id) return id_less(a.id, b.id);
  return a.range.end < b.range.end;
}

}  // namespace

IntervalIndex::IntervalIndex(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), entry_less);
  subtree_end_.resize(entries_.size());
  build(0, entries_.size());
}

void IntervalIndex::build(std::size_t lo, std::size_t hi) {
  if (lo >= hi) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  build(lo, mid);
  build(mid + 1, hi);
  Millis m = entries_[mid].range.end;
  if (lo < mid) m = std::max(m, subtree_end_[lo + (mid - lo) / 2]);
  if (mid + 1 < hi) m = std::max(m, subtree_end_[mid + 1 + (hi - mid - 1) / 2]);
  subtree_end_[mid] = m;
}

void IntervalIndex::stab_into(std::size_t lo, std::size_t hi, Millis t, std::vector<const Entry*>& out) const {
  if (lo >= hi) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  if (subtree_end_[mid] <= t) return;
  stab_into(lo, mid, t, out);
  const auto& e = entries_[mid];
  if (e.range.start > t) return;  // everything to the right starts later still
  if (t < e.range.end) out.push_back(&e);
  stab_into(mid + 1, hi, t, out);
}

void IntervalIndex::overlap_into(std::size_t lo, std::size_t hi, const TimeRange& q, Millis min_overlap,
                                 std::vector<const Entry*>& out) const {
  if (lo >= hi) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  // Any hit needs end > q.start + min_overlap and start < q.end - min_overlap.
  if (subtree_end_[mid] <= q.start + min_overlap) return;
  overlap_into(lo, mid, q, min_overlap, out);
  const auto& e = entries_[mid];
  if (e.range.start >= q.end - min_overlap) return;
  if (overlap(e.range, q).length > min_overlap) out.push_back(&e);
  overlap_into(mid + 1, hi, q, min_overlap, out);
}

std::vector<const IntervalIndex::Entry*> IntervalIndex::stab(Millis t) const {
  std::vector<const Entry*> out;
  stab_into(0, entries_.size(), t, out);
  return out;
}

std::vector<const IntervalIndex::Entry*> IntervalIndex::overlapping(const TimeRange& range, Millis min_overlap) const {
  std::vector<const Entry*> out;
  overlap_into(0, entries_.size(), range, min_overlap, out);
  return out;
}

namespace {

std::vector<IntervalIndex::Entry> shot_entries(const Script& s) {
  std::vector<IntervalIndex::Entry> out;
  out.reserve(s.shots.size());
  for (const auto& shot : s.shots) out.push_back({shot.time_range, shot.id});
  return out;
}

std::vector<IntervalIndex::Entry> event_entries(const Script& s) {
  std::vector<IntervalIndex::Entry> out;
  out.reserve(s.events.size());
  for (const auto& ev : s.events) out.push_back({ev.time_range, ev.id});
  return out;
}

std::vector<std::string> ids_of(const std::vector<const IntervalIndex::Entry*>& entries) {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto* e : entries) out.push_back(e->id);
  return out;
}

}  // namespace

TimelineIndex::TimelineIndex(const Script& script) : shots_(shot_entries(script)), events_(event_entries(script)) {}

std::vector<std::string> TimelineIndex::shots_active_at(Millis t) const { return ids_of(shots_.stab(t)); }
std::vector<std::string> TimelineIndex::events_active_at(Millis t) const { return ids_of(events_.stab(t)); }
std::vector<std::string> TimelineIndex::shots_overlapping(const TimeRange& r) const {
  return ids_of(shots_.overlapping(r));
}
std::vector<std::string> TimelineIndex::events_overlapping(const TimeRange& r) const {
  return ids_of(events_.overlapping(r));
}

TimelineIndex build_index(const Script& script) { return TimelineIndex(script); }

std::map<std::string, std::vector<std::string>> infer_active_events(const Script& script) {
  const TimelineIndex index(script);
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& shot : script.shots) out[shot.id] = index.events_overlapping(shot.time_range);
  return out;
}

Result<std::vector<Millis>, EmptyShotStream> boundaries(const Script& script) {
  if (script.shots.empty()) return fail(EmptyShotStream{});
  // A zero duration means "unknown"; the last shot end closes the timeline.
  Millis outer = script.meta.duration;
  if (outer.count <= 0) {
    for (const auto& shot : script.shots) outer = std::max(outer, shot.time_range.end);
  }
  std::vector<Millis> out;
  for (const auto& shot : script.shots) {
    for (const Millis t : {shot.time_range.start, shot.time_range.end}) {
      if (t.count > 0 && t < outer) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mtss
